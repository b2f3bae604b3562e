#include "test_support.hpp"

#include <mandel_laurent/combinatorics.hpp>
#include <mandel_laurent/mandelbrot.hpp>

#include <gtest/gtest.h>

using ml::Dyadic;
using ml::MonicSeries;
using ml::Order;

namespace {

Dyadic frac(long num, std::int64_t exp) { return Dyadic(mpz_class(num), exp); }

} // namespace

TEST(PhiSeries, HandExpansionAnchors)
{
    // (f_c^3(0))^{1/4} = c (1 - x)^{1/2} (1 - x^3 (1 - x)^{-2})^{1/4}: through x^2 only
    // the (1 - x)^{1/2} factor contributes, giving 1 - x/2 - x^2/8.
    const auto hand = ml::testing::rational_power({1, -1}, mpq_class(1, 2), 2);
    EXPECT_EQ(hand[1], mpq_class(-1, 2));
    EXPECT_EQ(hand[2], mpq_class(-1, 8));

    const MonicSeries B = ml::phi_series(1);
    EXPECT_EQ(ml::testing::to_mpq(B[0]), hand[1]);
    EXPECT_EQ(ml::testing::to_mpq(B[1]), hand[2]);
    EXPECT_EQ(B[0], frac(-1, 1)); // z^2 - c convention: not +1/2
    EXPECT_EQ(B[1], frac(-1, 3));
}

TEST(PhiSeries, MatchesPolynomialOracle)
{
    const std::size_t L = 24;
    const MonicSeries B = ml::phi_series(L);
    // n = 7 gives 2^n - 1 = 127 > L + 1, with g_7 taken straight from f_c^7(0)
    const auto oracle = ml::testing::phi_oracle(L, 7);
    for (std::size_t ell = 0; ell <= L; ++ell) {
        EXPECT_EQ(ml::testing::to_mpq(B[ell]), oracle[ell]) << ell;
    }
}

TEST(PhiSeries, CoefficientsHaveTheoremOneOrders)
{
    const MonicSeries B = ml::phi_series(64);
    for (std::size_t ell = 0; ell <= 64; ++ell) {
        ASSERT_FALSE(B[ell].is_zero()) << ell;
        EXPECT_EQ(B[ell].order(), Order(-static_cast<std::int64_t>(ml::p_of(ell)))) << ell;
    }
    EXPECT_EQ(B[2].order(), Order(-4));
    EXPECT_EQ(B[3].order(), Order(-7));
}

TEST(PhiSeries, StabilizesOnceIterationBoundIsMet)
{
    for (std::size_t L : {1u, 5u, 30u, 62u, 63u, 100u}) {
        const unsigned n = ml::phi_iteration_count(L);
        EXPECT_GT((std::uint64_t{1} << n) - 1, L + 1);
        EXPECT_LE((std::uint64_t{1} << (n - 1)) - 1, L + 1);
        const MonicSeries base = ml::phi_series_with_iterations(L, n);
        EXPECT_EQ(ml::phi_series_with_iterations(L, n + 1), base) << L;
        EXPECT_EQ(ml::phi_series_with_iterations(L, n + 2), base) << L;
    }
}

TEST(PhiSeries, IndexFreezesWhenIterateExceedsIt)
{
    // coefficient ell of phi is final as soon as 2^n - 1 > ell + 1
    const MonicSeries reference = ml::phi_series(40);
    for (unsigned n = 2; n <= 6; ++n) {
        const MonicSeries early = ml::phi_series_with_iterations(40, n);
        for (std::size_t ell = 0; ell <= 40; ++ell) {
            if ((std::uint64_t{1} << n) - 1 > ell + 1) {
                EXPECT_EQ(early[ell], reference[ell]) << "n=" << n << " ell=" << ell;
            }
        }
    }
}

TEST(PhiSeries, RejectsBadArguments)
{
    EXPECT_THROW(ml::phi_series(0), std::invalid_argument);
    EXPECT_THROW(ml::phi_series_with_iterations(5, 1), std::invalid_argument);
}

TEST(PsiSeries, AnchorValues)
{
    const MonicSeries C = ml::psi_series(16, ml::ValidationLevel::full);
    EXPECT_EQ(C[0], frac(1, 1));
    EXPECT_EQ(C[1], frac(1, 3));
    // C_2 = -B_2 + C_1 B_0 = 5/16 - 1/16
    EXPECT_EQ(C[2], frac(1, 2));
    EXPECT_GT(C[2].order(), Order(-4));
    EXPECT_EQ(C[3].order(), Order(-7));
    EXPECT_TRUE(C[4].is_zero());
}

TEST(PsiSeries, KnownLowOrderCoefficients)
{
    // |C_l| for the exterior Riemann map: 1/2, 1/8, 1/4, 15/128, 0, 47/1024, 1/16, 987/32768
    const MonicSeries C = ml::psi_series(7);
    EXPECT_EQ(C[3], frac(15, 7));
    EXPECT_EQ(C[5], frac(-47, 10));
    EXPECT_EQ(C[6], frac(1, 4));
    EXPECT_EQ(C[7], frac(987, 15));
}

TEST(PsiSeries, ComposeCheckIsFull)
{
    for (std::size_t L : {16u, 32u, 64u}) {
        const MonicSeries B = ml::phi_series(L);
        const MonicSeries C = ml::psi_from_phi(B);
        EXPECT_EQ(ml::compose_check(C, B), static_cast<std::int64_t>(L)) << L;
    }
}

TEST(PsiSeries, ThreadCountDoesNotChangeOutput)
{
    const MonicSeries serial = ml::psi_series(96, ml::ValidationLevel::cheap, 1);
    EXPECT_EQ(ml::psi_series(96, ml::ValidationLevel::cheap, 4), serial);
    EXPECT_EQ(ml::psi_series(96, ml::ValidationLevel::cheap, 1), serial);
}

TEST(PsiSeries, FullValidationAcceptsGeneratorOutput)
{
    EXPECT_NO_THROW(ml::psi_series(48, ml::ValidationLevel::full));
}
