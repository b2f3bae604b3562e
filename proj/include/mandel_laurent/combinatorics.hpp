#pragma once

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace ml {

/// ord(n!) by Legendre's formula at p = 2: n - s2(n).
constexpr std::uint64_t ord_factorial(std::uint64_t n) noexcept
{
    return n - static_cast<std::uint64_t>(std::popcount(n));
}

/// Denominator exponent of B_l in lowest terms: l + 1 + ord((l+1)!).
constexpr std::uint64_t p_of(std::uint64_t ell) noexcept { return ell + 1 + ord_factorial(ell + 1); }

/// Whether k! / (parts[0]! parts[1]! ...) is odd.
///
/// Kummer: the multinomial is odd iff the parts add in binary without carries,
/// i.e. the parts have pairwise disjoint bit sets.
inline bool multinomial_is_odd(std::uint64_t k, std::span<const std::uint64_t> parts)
{
    std::uint64_t total = 0;
    std::uint64_t seen = 0;
    bool carry_free = true;
    for (std::uint64_t p : parts) {
        if (p == 0) {
            throw std::invalid_argument("multinomial_is_odd: parts must be positive");
        }
        total += p;
#ifdef ML_MUTATE_CARRY_RULE
        // deliberately broken rule, used only by the mutation check build
        carry_free = carry_free && ((seen | p) != 0);
#else
        carry_free = carry_free && (seen & p) == 0;
#endif
        seen |= p;
    }
    if (total != k) {
        throw std::invalid_argument("multinomial_is_odd: parts do not sum to k");
    }
    return carry_free;
}

/// Exact multinomial coefficient k! / prod(parts!). Test oracle; slow.
inline mpz_class multinomial(std::span<const std::uint64_t> parts)
{
    mpz_class result = 1;
    std::uint64_t running = 0;
    for (std::uint64_t p : parts) {
        running += p;
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), running, p);
        result *= b;
    }
    return result;
}

inline mpz_class binomial(std::uint64_t n, std::uint64_t k)
{
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

/// An ordered tuple (i_1, ..., i_j) of non-negative integers.
/// Used under the constraint sum(i_t + 1) = k.
struct Composition {
    std::vector<std::uint64_t> parts;

    std::size_t length() const noexcept { return parts.size(); }

    /// sum(i_t + 1)
    std::uint64_t shifted_total() const noexcept
    {
        return std::accumulate(parts.begin(), parts.end(), std::uint64_t{0}) + parts.size();
    }

    /// multinomial(k; i_1 + 1, ..., i_j + 1)
    mpz_class multinomial_weight() const
    {
        std::vector<std::uint64_t> shifted(parts.begin(), parts.end());
        for (auto &p : shifted) {
            ++p;
        }
        return multinomial(shifted);
    }

    friend bool operator==(const Composition &, const Composition &) = default;
};

/// Streams every (i_1, ..., i_j) with i_t >= 0 and sum(i_t + 1) = k to `visit`,
/// in lexicographic order. Iterative odometer; nothing is materialized.
template <typename Visitor>
void for_each_composition(std::uint64_t k, std::uint64_t j, Visitor &&visit)
{
    if (j == 0 || j > k) {
        return;
    }
    const std::uint64_t slack = k - j; // == sum of i_t
    Composition c;
    c.parts.assign(j, 0);
    c.parts[j - 1] = slack;
    for (;;) {
        visit(static_cast<const Composition &>(c));
        if (j == 1) {
            return;
        }
        // bump the rightmost slot t < j-1 that has mass after it,
        // then pour the remaining tail mass into the final slot
        std::size_t t = j - 2;
        std::uint64_t tail = c.parts[j - 1];
        while (tail == 0) {
            if (t == 0) {
                return;
            }
            tail += c.parts[t];
            --t;
        }
        ++c.parts[t];
        for (std::size_t s = t + 1; s < j; ++s) {
            c.parts[s] = 0;
        }
        c.parts[j - 1] = tail - 1;
    }
}

inline std::vector<Composition> compositions_summing_to(std::uint64_t k, std::uint64_t j)
{
    std::vector<Composition> out;
    for_each_composition(k, j, [&](const Composition &c) { out.push_back(c); });
    return out;
}

/// Brute-force check of
///   sum_{j=1}^{m} C(m, m-j) sum_{r_1+...+r_j = n, r_t >= 1} multinomial(n; r) == m^n.
inline bool identity_a_check(std::uint64_t m, std::uint64_t n)
{
    if (m < 1 || m > n) {
        throw std::invalid_argument("identity_a_check: need 1 <= m <= n");
    }
    mpz_class total = 0;
    for (std::uint64_t j = 1; j <= m; ++j) {
        mpz_class inner = 0;
        // positive parts r_t = i_t + 1
        for_each_composition(n, j, [&](const Composition &c) { inner += c.multinomial_weight(); });
        total += binomial(m, m - j) * inner;
    }
    mpz_class rhs;
    mpz_ui_pow_ui(rhs.get_mpz_t(), m, n);
    return total == rhs;
}

/// Exact check of sum_{i=0}^{floor(n/2)} C(n, 2i) == 2^(n-1).
inline bool identity_b_check(std::uint64_t n)
{
    if (n < 1) {
        throw std::invalid_argument("identity_b_check: need n >= 1");
    }
    mpz_class total = 0;
    for (std::uint64_t i = 0; 2 * i <= n; ++i) {
        total += binomial(n, 2 * i);
    }
    mpz_class rhs = 1;
    rhs <<= static_cast<mp_bitcnt_t>(n - 1);
    return total == rhs;
}

} // namespace ml
