#pragma once

#include "combinatorics.hpp"
#include "dyadic.hpp"
#include "reversion.hpp"
#include "series.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ml {

enum class Classification {
    exact_order,  // B_l nonzero with ord = -p_l
    odd_equality, // C_l nonzero with ord = -p_l, for l = 0 or l odd
    even_strict,  // C_l nonzero with ord > -p_l, l even >= 2
    forced_zero,  // C_l = 0 at an index where it must vanish
    zero_at_even, // C_l = 0 at an even index outside the forced set
    violation,
};

inline std::string_view to_string(Classification c)
{
    switch (c) {
    case Classification::exact_order:
        return "exact-order";
    case Classification::odd_equality:
        return "odd-equality";
    case Classification::even_strict:
        return "even-strict";
    case Classification::forced_zero:
        return "forced-zero";
    case Classification::zero_at_even:
        return "zero-at-even";
    case Classification::violation:
        return "violation";
    }
    return "violation";
}

struct ValuationRecord {
    std::size_t ell = 0;
    std::int64_t expected_p = 0;
    Order observed_ord = Order::infinity();
    bool is_zero = true;
    Classification classification = Classification::violation;
};

/// One order relation from the induction argument, e.g. ord(M_k) = ord(B_{k-1}).
struct StepCheck {
    std::size_t ell = 0;
    std::string step;
    Order observed = Order::infinity();
    Order reference = Order::infinity();
    std::string relation; // "=" or ">"
    bool holds = false;
};

struct VerificationReport {
    std::string theorem;
    std::size_t first = 0;
    std::size_t last = 0;
    bool passed = true;
    std::vector<ValuationRecord> records;
    std::vector<StepCheck> steps;
    std::vector<std::size_t> unforced_zeros; // informational only
    double wall_seconds = 0.0;               // not serialized; reports stay byte-stable

    std::vector<ValuationRecord> violations() const
    {
        std::vector<ValuationRecord> out;
        std::copy_if(records.begin(), records.end(), std::back_inserter(out),
                     [](const ValuationRecord &r) { return r.classification == Classification::violation; });
        return out;
    }

    std::vector<StepCheck> failed_steps() const
    {
        std::vector<StepCheck> out;
        std::copy_if(steps.begin(), steps.end(), std::back_inserter(out), [](const StepCheck &s) { return !s.holds; });
        return out;
    }

    /// First failing index, for localizing a divergence.
    std::optional<std::size_t> first_failure() const
    {
        std::optional<std::size_t> best;
        for (const auto &r : records) {
            if (r.classification == Classification::violation && (!best || r.ell < *best)) {
                best = r.ell;
            }
        }
        for (const auto &s : steps) {
            if (!s.holds && (!best || s.ell < *best)) {
                best = s.ell;
            }
        }
        return best;
    }
};

/// Indices (2l+1) 2^m <= L with m >= 2 and 0 <= l <= 2^m - 3.
inline std::set<std::size_t> forced_zero_indices(std::size_t L)
{
    std::set<std::size_t> out;
    for (unsigned m = 2; (std::size_t{1} << m) <= L; ++m) {
        const std::size_t step = std::size_t{1} << m;
        const std::size_t l_max = step - 3;
        for (std::size_t l = 0; l <= l_max && (2 * l + 1) * step <= L; ++l) {
            out.insert((2 * l + 1) * step);
        }
    }
    return out;
}

inline bool is_forced_zero(std::size_t ell)
{
    if (ell < 4) {
        return false;
    }
    const unsigned m = static_cast<unsigned>(std::countr_zero(ell));
    if (m < 2 || m >= 63) {
        return false;
    }
    const std::size_t l = ((ell >> m) - 1) / 2;
    return l <= (std::size_t{1} << m) - 3;
}

/// Theorem-1 rule for a B coefficient: nonzero with ord(B_l) = -p_l.
inline Classification classify_phi_coefficient(std::size_t, std::int64_t expected_p, const Order &observed, bool is_zero)
{
    if (!is_zero && observed == Order(-expected_p)) {
        return Classification::exact_order;
    }
    return Classification::violation;
}

/// Theorem-3/4 rule for a C coefficient: equality for l = 0 and odd l,
/// zero or strict inequality for even l >= 2.
inline Classification classify_psi_coefficient(std::size_t ell, std::int64_t expected_p, const Order &observed,
                                               bool is_zero)
{
    const bool equality_case = ell == 0 || ell % 2 == 1;
    if (is_zero) {
        if (equality_case) {
            return Classification::violation;
        }
        return is_forced_zero(ell) ? Classification::forced_zero : Classification::zero_at_even;
    }
    if (equality_case) {
        return observed == Order(-expected_p) ? Classification::odd_equality : Classification::violation;
    }
    return observed > Order(-expected_p) ? Classification::even_strict : Classification::violation;
}

namespace detail {

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline ValuationRecord make_record(std::size_t ell, const Dyadic &value)
{
    ValuationRecord r;
    r.ell = ell;
    r.expected_p = static_cast<std::int64_t>(p_of(ell));
    r.observed_ord = value.order();
    r.is_zero = value.is_zero();
    return r;
}

inline void finish(VerificationReport &report, const Stopwatch &clock)
{
    report.passed = report.violations().empty() && report.failed_steps().empty();
    report.wall_seconds = clock.seconds();
}

} // namespace detail

inline VerificationReport verify_theorem1(const MonicSeries &B)
{
    detail::Stopwatch clock;
    VerificationReport report;
    report.theorem = "theorem1";
    report.last = B.truncation();
    for (std::size_t ell = 0; ell <= B.truncation(); ++ell) {
        auto r = detail::make_record(ell, B[ell]);
        r.classification = classify_phi_coefficient(ell, r.expected_p, r.observed_ord, r.is_zero);
        report.records.push_back(r);
    }
    detail::finish(report, clock);
    return report;
}

/// Asserts C_l = 0 on the forced set; zeros elsewhere are listed but never fail.
inline VerificationReport verify_theorem2(const MonicSeries &C)
{
    detail::Stopwatch clock;
    VerificationReport report;
    report.theorem = "theorem2";
    report.last = C.truncation();
    const auto forced = forced_zero_indices(C.truncation());
    for (std::size_t ell : forced) {
        auto r = detail::make_record(ell, C[ell]);
        r.classification = r.is_zero ? Classification::forced_zero : Classification::violation;
        report.records.push_back(r);
    }
    for (std::size_t ell = 0; ell <= C.truncation(); ++ell) {
        if (C[ell].is_zero() && !forced.contains(ell)) {
            report.unforced_zeros.push_back(ell);
        }
    }
    detail::finish(report, clock);
    return report;
}

namespace detail {

inline VerificationReport verify_psi_orders(const MonicSeries &C, std::string name, bool odd_only)
{
    Stopwatch clock;
    VerificationReport report;
    report.theorem = std::move(name);
    report.first = odd_only ? 1 : 0;
    report.last = C.truncation();
    for (std::size_t ell = report.first; ell <= C.truncation(); ell += odd_only ? 2 : 1) {
        auto r = make_record(ell, C[ell]);
        r.classification = classify_psi_coefficient(ell, r.expected_p, r.observed_ord, r.is_zero);
        report.records.push_back(r);
    }
    finish(report, clock);
    return report;
}

} // namespace detail

/// Odd l: C_l nonzero and ord(C_l) = -p_l.
inline VerificationReport verify_theorem3(const MonicSeries &C) { return detail::verify_psi_orders(C, "theorem3", true); }

/// Every l: ord(C_l) >= -p_l, with equality exactly when l = 0 or l is odd.
inline VerificationReport verify_theorem4(const MonicSeries &C) { return detail::verify_psi_orders(C, "theorem4", false); }

inline VerificationReport verify_theorem3_and_4(const MonicSeries &C)
{
    return detail::verify_psi_orders(C, "theorem3+4", false);
}

/// Order statements used by the induction, for l = 1..L:
///   lemma7a   ord(M_l)       vs ord(B_{l-1}):  "=" for odd l, ">" for even l
///   lemma7b   ord(P_l)       vs ord(B_l):      "=" for odd l, ">" for even l
///   i         ord(M_{l+1} - P_l) = ord(B_l)
///   ii        ord(C_0 M_l)       > ord(B_l)
///   iii       odd l:       ord(sum_{k<l} C_k M_{l-k}) > ord(B_l)
///   iv        even l >= 2: ord(sum_{k<l} C_k M_{l-k}) = ord(B_l)
inline VerificationReport verify_induction_steps(const MonicSeries &B, const MonicSeries &C, unsigned jobs = 1)
{
    detail::Stopwatch clock;
    VerificationReport report;
    report.theorem = "induction";
    const std::size_t L = std::min(B.truncation(), C.truncation());
    report.first = 1;
    report.last = L;
    const MonicSeries Bt = B.truncated(L);
    const CompositionSums s = composition_sums(Bt, L + 1, L, jobs);

    const auto check = [&](std::size_t ell, std::string step, Order observed, Order reference, bool strict) {
        StepCheck c;
        c.ell = ell;
        c.step = std::move(step);
        c.observed = observed;
        c.reference = reference;
        c.relation = strict ? ">" : "=";
        c.holds = strict ? observed > reference : observed == reference;
        report.steps.push_back(std::move(c));
    };

    for (std::size_t ell = 1; ell <= L; ++ell) {
        const bool odd = ell % 2 == 1;
        check(ell, "lemma7a", s.M[ell].order(), Bt[ell - 1].order(), !odd);
        check(ell, "lemma7b", s.P[ell].order(), Bt[ell].order(), !odd);
        check(ell, "i", (s.M[ell + 1] - s.P[ell]).order(), Bt[ell].order(), false);
        check(ell, "ii", (C[0] * s.M[ell]).order(), Bt[ell].order(), true);
        Dyadic sum;
        for (std::size_t k = 0; k < ell; ++k) {
            sum.add_product(C[k], s.M[ell - k]);
        }
        check(ell, odd ? "iii" : "iv", sum.order(), Bt[ell].order(), odd);
    }
    detail::finish(report, clock);
    return report;
}

} // namespace ml
