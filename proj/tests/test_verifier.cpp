#include <mandel_laurent/hypothesis_series.hpp>
#include <mandel_laurent/mandelbrot.hpp>
#include <mandel_laurent/serialization.hpp>
#include <mandel_laurent/verifier.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

using ml::Classification;
using ml::Dyadic;
using ml::MonicSeries;
using ml::Order;

namespace {

struct Tables {
    MonicSeries B;
    MonicSeries C;
};

const Tables &tables64()
{
    static const Tables t = [] {
        Tables x;
        x.B = ml::phi_series(64);
        x.C = ml::psi_from_phi(x.B);
        return x;
    }();
    return t;
}

} // namespace

TEST(ForcedZeros, Examples)
{
    EXPECT_EQ(ml::forced_zero_indices(16), (std::set<std::size_t>{4, 8, 12, 16}));
    EXPECT_TRUE(ml::forced_zero_indices(3).empty());
    EXPECT_FALSE(ml::forced_zero_indices(1000).contains(20));
    EXPECT_FALSE(ml::is_forced_zero(20));
    for (std::size_t ell : {24u, 40u, 48u}) {
        EXPECT_TRUE(ml::forced_zero_indices(256).contains(ell)) << ell;
    }
}

TEST(ForcedZeros, MembershipMatchesBruteForce)
{
    const std::size_t L = 2048;
    std::set<std::size_t> brute;
    for (std::size_t m = 2; m < 12; ++m) {
        for (std::size_t l = 0; l + 3 <= (std::size_t{1} << m); ++l) {
            const std::size_t idx = (2 * l + 1) << m;
            if (idx <= L) {
                brute.insert(idx);
            }
        }
    }
    EXPECT_EQ(ml::forced_zero_indices(L), brute);
    for (std::size_t ell = 0; ell <= L; ++ell) {
        EXPECT_EQ(ml::is_forced_zero(ell), brute.contains(ell)) << ell;
    }
}

TEST(Classification, PsiRules)
{
    EXPECT_EQ(ml::classify_psi_coefficient(0, 1, Order(-1), false), Classification::odd_equality);
    EXPECT_EQ(ml::classify_psi_coefficient(0, 1, Order(0), false), Classification::violation);
    EXPECT_EQ(ml::classify_psi_coefficient(3, 7, Order(-7), false), Classification::odd_equality);
    EXPECT_EQ(ml::classify_psi_coefficient(3, 7, Order(-6), false), Classification::violation);
    EXPECT_EQ(ml::classify_psi_coefficient(3, 7, Order::infinity(), true), Classification::violation);
    EXPECT_EQ(ml::classify_psi_coefficient(2, 4, Order(-2), false), Classification::even_strict);
    EXPECT_EQ(ml::classify_psi_coefficient(2, 4, Order(-4), false), Classification::violation);
    EXPECT_EQ(ml::classify_psi_coefficient(4, 8, Order::infinity(), true), Classification::forced_zero);
    EXPECT_EQ(ml::classify_psi_coefficient(20, 26, Order::infinity(), true), Classification::zero_at_even);
}

TEST(Classification, PhiRules)
{
    EXPECT_EQ(ml::classify_phi_coefficient(3, 7, Order(-7), false), Classification::exact_order);
    EXPECT_EQ(ml::classify_phi_coefficient(3, 7, Order(-6), false), Classification::violation);
    EXPECT_EQ(ml::classify_phi_coefficient(3, 7, Order::infinity(), true), Classification::violation);
}

TEST(Theorem1, PassesOnGenerator)
{
    const auto r = ml::verify_theorem1(tables64().B);
    EXPECT_TRUE(r.passed);
    ASSERT_EQ(r.records.size(), 65u);
    EXPECT_EQ(r.records[0].observed_ord, Order(-1));
    EXPECT_EQ(r.records[3].observed_ord, Order(-7));
    EXPECT_EQ(r.records[3].expected_p, 7);
}

TEST(Theorem1, FlagsAPerturbedCoefficient)
{
    const MonicSeries bad = tables64().B.with_coefficient(5, Dyadic(mpz_class(3), 2));
    const auto r = ml::verify_theorem1(bad);
    EXPECT_FALSE(r.passed);
    ASSERT_EQ(r.violations().size(), 1u);
    EXPECT_EQ(r.violations()[0].ell, 5u);
    EXPECT_EQ(r.first_failure(), 5u);
}

TEST(Theorem2, PassesOnGeneratorAndListsForcedZeros)
{
    const auto r = ml::verify_theorem2(tables64().C);
    EXPECT_TRUE(r.passed);
    std::set<std::size_t> checked;
    for (const auto &rec : r.records) {
        EXPECT_EQ(rec.classification, Classification::forced_zero);
        checked.insert(rec.ell);
    }
    EXPECT_EQ(checked, ml::forced_zero_indices(64));
    EXPECT_TRUE(checked.contains(4) && checked.contains(8) && checked.contains(12) && checked.contains(16));
}

TEST(Theorem2, EmptyRangeAndCorruption)
{
    const auto empty = ml::verify_theorem2(tables64().C.truncated(3));
    EXPECT_TRUE(empty.passed);
    EXPECT_TRUE(empty.records.empty());

    const MonicSeries bad = tables64().C.with_coefficient(12, Dyadic(mpz_class(1), 9));
    const auto r = ml::verify_theorem2(bad);
    EXPECT_FALSE(r.passed);
    EXPECT_EQ(r.first_failure(), 12u);
}

TEST(Theorem2, UnforcedZerosAreReportedNotFailed)
{
    const MonicSeries odd = tables64().C.with_coefficient(6, Dyadic());
    const auto r = ml::verify_theorem2(odd);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.unforced_zeros, (std::vector<std::size_t>{6}));
}

TEST(Theorem3And4, PassOnGenerator)
{
    const auto &C = tables64().C;
    EXPECT_TRUE(ml::verify_theorem3(C).passed);
    EXPECT_TRUE(ml::verify_theorem4(C).passed);
    const auto r = ml::verify_theorem3_and_4(C);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.records[0].classification, Classification::odd_equality);
    EXPECT_EQ(r.records[1].observed_ord, Order(-3));
    EXPECT_EQ(r.records[2].classification, Classification::even_strict);
    EXPECT_GT(r.records[2].observed_ord, Order(-4));
    EXPECT_EQ(r.records[4].classification, Classification::forced_zero);
    for (const auto &rec : ml::verify_theorem3(C).records) {
        EXPECT_EQ(rec.ell % 2, 1u);
    }
}

TEST(Theorem3And4, EqualityAtEvenIndexIsAViolation)
{
    // force ord(C_2) = -p_2 = -4
    const MonicSeries bad = tables64().C.with_coefficient(2, Dyadic(mpz_class(1), 4));
    const auto r = ml::verify_theorem4(bad);
    EXPECT_FALSE(r.passed);
    EXPECT_EQ(r.first_failure(), 2u);
}

TEST(InductionSteps, PassOnGeneratorWithExpectedLowValues)
{
    const auto &[B, C] = tables64();
    const auto r = ml::verify_induction_steps(B, C);
    EXPECT_TRUE(r.passed);
    ASSERT_GE(r.steps.size(), 10u);
    // ell = 1: ord(M_2 - P_1) = ord(B_1) = -3, with M_2 = 0
    const auto &step_i = r.steps[2];
    EXPECT_EQ(step_i.step, "i");
    EXPECT_EQ(step_i.ell, 1u);
    EXPECT_EQ(step_i.observed, Order(-3));
    EXPECT_EQ(step_i.reference, Order(-3));
    const auto &lemma7a_2 = r.steps[5];
    EXPECT_EQ(lemma7a_2.step, "lemma7a");
    EXPECT_EQ(lemma7a_2.ell, 2u);
    EXPECT_EQ(lemma7a_2.observed, Order::infinity());
    EXPECT_EQ(r.steps[9].step, "iv"); // ell = 2
    EXPECT_EQ(r.steps[9].relation, "=");
    EXPECT_EQ(r.steps[14].step, "iii"); // ell = 3
    EXPECT_EQ(r.steps[14].relation, ">");
}

TEST(HypothesisShape, Theorem4AndInductionHoldForRandomSeries)
{
    std::mt19937_64 rng(61);
    for (int t = 0; t < 50; ++t) {
        const MonicSeries B = ml::random_hypothesis_series(48, rng);
        const MonicSeries C = ml::revert_lemma5(B);
        EXPECT_TRUE(ml::verify_theorem1(B).passed);
        const auto r4 = ml::verify_theorem4(C);
        for (const auto &rec : r4.records) {
            // forced-zero / zero-at-even both mean "C_l = 0 at an even index", allowed by the statement
            EXPECT_NE(rec.classification, Classification::violation) << "series " << t << " ell " << rec.ell;
        }
        EXPECT_TRUE(ml::verify_induction_steps(B, C).passed) << "series " << t;
    }
}

TEST(Reports, DeterministicSerialization)
{
    const auto &[B, C] = tables64();
    const auto a = ml::report_to_json(ml::verify_induction_steps(B, C, 1)).dump();
    const auto b = ml::report_to_json(ml::verify_induction_steps(B, C, 4)).dump();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.find("wall"), std::string::npos);
}

TEST(Reports, CsvColumns)
{
    const MonicSeries C = tables64().C.truncated(4);
    std::ostringstream os;
    ml::write_report_csv(os, ml::verify_theorem4(C));
    EXPECT_EQ(os.str(), "ell,expected_p,observed_ord,is_zero,classification\n"
                        "0,1,-1,false,odd-equality\n"
                        "1,3,-3,false,odd-equality\n"
                        "2,4,-2,false,even-strict\n"
                        "3,7,-7,false,odd-equality\n"
                        "4,8,inf,true,forced-zero\n");
}

TEST(Reports, JsonMarksFailures)
{
    const MonicSeries bad = tables64().C.with_coefficient(8, Dyadic(1));
    const auto j = ml::report_to_json(ml::verify_theorem2(bad));
    EXPECT_FALSE(j.at("passed").get<bool>());
    EXPECT_EQ(j.at("first_failure").get<std::size_t>(), 8u);
    EXPECT_EQ(j.at("violations").get<std::size_t>(), 1u);
}
