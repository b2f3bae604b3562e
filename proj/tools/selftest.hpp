#pragma once

#include <mandel_laurent/mandel_laurent.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace ml::cli {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace suites {

inline SuiteResult identity_a()
{
    std::size_t cases = 0;
    for (std::uint64_t n = 1; n <= 10; ++n) {
        for (std::uint64_t m = 1; m <= n; ++m) {
            ++cases;
            if (!identity_a_check(m, n)) {
                return {"identity-a", false, "fails at m=" + std::to_string(m) + " n=" + std::to_string(n)};
            }
        }
    }
    return {"identity-a", true, std::to_string(cases) + " cases, 1 <= m <= n <= 10"};
}

inline SuiteResult identity_b()
{
    for (std::uint64_t n = 1; n <= 30; ++n) {
        if (!identity_b_check(n)) {
            return {"identity-b", false, "fails at n=" + std::to_string(n)};
        }
    }
    return {"identity-b", true, "1 <= n <= 30"};
}

inline SuiteResult legendre()
{
    for (std::uint64_t n = 0; n <= 100000; ++n) {
        std::uint64_t naive = 0;
        for (std::uint64_t q = n / 2; q > 0; q /= 2) {
            naive += q;
        }
        if (naive != ord_factorial(n)) {
            return {"legendre", false, "fails at n=" + std::to_string(n)};
        }
    }
    return {"legendre", true, "0 <= n <= 100000"};
}

/// Random partition of k into positive parts.
inline std::vector<std::uint64_t> random_parts(std::uint64_t k, std::mt19937_64 &rng)
{
    std::vector<std::uint64_t> parts;
    std::uint64_t left = k;
    while (left > 0) {
        const std::uint64_t p = 1 + rng() % left;
        parts.push_back(p);
        left -= p;
    }
    return parts;
}

inline SuiteResult lemma6_parity(std::size_t instances = 1000)
{
    std::mt19937_64 rng(0x1e6a6u);
    for (std::size_t t = 0; t < instances; ++t) {
        const std::uint64_t k = 1 + rng() % 64;
        const auto parts = random_parts(k, rng);
        const bool exact_odd = mpz_odd_p(multinomial(parts).get_mpz_t()) != 0;
        if (multinomial_is_odd(k, parts) != exact_odd) {
            return {"lemma6-parity", false, "carry rule disagrees with exact parity at k=" + std::to_string(k)};
        }
    }
    return {"lemma6-parity", true, std::to_string(instances) + " random instances, k <= 64"};
}

inline SuiteResult lemma6_orders(const MonicSeries &B, std::size_t instances = 500)
{
    std::mt19937_64 rng(0x1e6a7u);
    const std::uint64_t k_cap = std::min<std::uint64_t>(40, B.truncation() + 1);
    for (std::size_t t = 0; t < instances; ++t) {
        const std::uint64_t k = 1 + rng() % k_cap;
        const auto shifted = random_parts(k, rng); // i_t + 1
        Dyadic product(1);
        for (auto s : shifted) {
            product *= B[s - 1];
        }
        const Order gap = product.order() - B[k - 1].order().value();
        const Order expected = ord(multinomial(shifted));
        const bool attains = gap == Order(0);
        if (gap != expected || attains != multinomial_is_odd(k, shifted)) {
            return {"lemma6-orders", false, "order gap mismatch at k=" + std::to_string(k)};
        }
    }
    return {"lemma6-orders", true, std::to_string(instances) + " random compositions, k <= " + std::to_string(k_cap)};
}

inline SuiteResult oracle_equivalence(const MonicSeries &B, std::size_t random_series = 20, unsigned jobs = 1)
{
    if (revert_lemma5(B, jobs) != revert_oracle(B, jobs)) {
        return {"oracle-equivalence", false, "Mandelbrot series"};
    }
    std::mt19937_64 rng(0x0eac1eu);
    for (std::size_t t = 0; t < random_series; ++t) {
        const MonicSeries R = random_hypothesis_series(B.truncation(), rng);
        if (revert_lemma5(R, jobs) != revert_oracle(R, jobs)) {
            return {"oracle-equivalence", false, "random series #" + std::to_string(t)};
        }
    }
    return {"oracle-equivalence", true,
            "L=" + std::to_string(B.truncation()) + ", Mandelbrot + " + std::to_string(random_series) + " random"};
}

} // namespace suites

inline std::vector<SuiteResult> run_selftest(unsigned jobs)
{
    const MonicSeries B = phi_series(64, jobs);
    return {
        suites::identity_a(),
        suites::identity_b(),
        suites::legendre(),
        suites::lemma6_parity(),
        suites::lemma6_orders(B),
        suites::oracle_equivalence(B, 20, jobs),
    };
}

} // namespace ml::cli
