#pragma once

#include "reversion.hpp"
#include "series.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ml {

enum class ValidationLevel { none, cheap, full };

struct GeneratorConfig {
    std::size_t L = 1;
    bool emit_psi = true;
    ValidationLevel validation = ValidationLevel::cheap;
    unsigned jobs = 1;
};

/// Raised when the two reversion routes disagree. Always an implementation bug.
class ReversionMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Smallest n >= 2 with 2^n - 1 > L + 1. Past this iteration count, every
/// coefficient of phi through index L is frozen.
inline unsigned phi_iteration_count(std::size_t L)
{
    unsigned n = 2;
    while (((std::uint64_t{1} << n) - 1) <= L + 1) {
        ++n;
    }
    return n;
}

/// phi for f_c(z) = z^2 - c, computed with a caller-chosen iteration count.
///
/// With x = 1/c, g_n = f_c^n(0) c^{-2^{n-1}} satisfies g_2 = 1 - x and
/// g_{n+1} = g_n^2 - x^{2^n - 1}; then phi(c) = c g_n^{1/2^{n-1}} through
/// every coefficient that has stabilized.
inline MonicSeries phi_series_with_iterations(std::size_t L, unsigned n, unsigned jobs = 1)
{
    if (L < 1) {
        throw std::invalid_argument("phi_series: need L >= 1");
    }
    if (n < 2) {
        throw std::invalid_argument("phi_series: need at least two iterations");
    }
    const std::size_t N = L + 1; // x-degree of B_L
    std::vector<Dyadic> g0(N + 1);
    g0[0] = Dyadic(1);
    g0[1] = Dyadic(-1);
    UnitSeries g(std::move(g0));
    for (unsigned step = 2; step < n; ++step) {
        g = mul_unit(g, g, jobs);
        const std::uint64_t shift = (std::uint64_t{1} << step) - 1;
        if (shift <= N) {
            std::vector<Dyadic> c(g.coeffs().begin(), g.coeffs().end());
            c[shift] -= Dyadic(1);
            g = UnitSeries(std::move(c));
        }
    }
    return MonicSeries::from_unit(root_pow2(g, n - 1));
}

/// B_0..B_L of phi(c) = c + B_0 + B_1/c + ...
inline MonicSeries phi_series(std::size_t L, unsigned jobs = 1)
{
    return phi_series_with_iterations(L, phi_iteration_count(L), jobs);
}

/// C_0..C_L of psi(w) = w + C_0 + C_1/w + ..., the formal inverse of phi.
/// With full validation the independent reversion and the composition check
/// must agree, else ReversionMismatch.
inline MonicSeries psi_from_phi(const MonicSeries &B, ValidationLevel validation = ValidationLevel::cheap,
                                unsigned jobs = 1)
{
    MonicSeries C = revert_lemma5(B, jobs);
    if (validation == ValidationLevel::full) {
        const MonicSeries oracle = revert_oracle(B, jobs);
        for (std::size_t ell = 0; ell <= B.truncation(); ++ell) {
            if (oracle[ell] != C[ell]) {
                throw ReversionMismatch("reversion routes disagree at index " + std::to_string(ell));
            }
        }
        const std::int64_t valid = compose_check(C, B, jobs);
        if (valid != static_cast<std::int64_t>(B.truncation())) {
            throw ReversionMismatch("psi(phi(c)) - c is nonzero at index " + std::to_string(valid + 1));
        }
    } else if (validation == ValidationLevel::cheap && B.truncation() >= 1) {
        // C_0 = -B_0 and C_1 = -B_1 hold for every series; anything else is a bug
        if (C[0] != -B[0] || C[1] != -B[1]) {
            throw ReversionMismatch("leading inverse coefficients are not -B_0, -B_1");
        }
    }
    return C;
}

inline MonicSeries psi_series(std::size_t L, ValidationLevel validation = ValidationLevel::cheap, unsigned jobs = 1)
{
    return psi_from_phi(phi_series(L, jobs), validation, jobs);
}

} // namespace ml
