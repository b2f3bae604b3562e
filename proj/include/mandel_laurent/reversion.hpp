#pragma once

#include "combinatorics.hpp"
#include "dyadic.hpp"
#include "parallel.hpp"
#include "series.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ml {

/// M_1..M_mmax and P_1..P_pmax of a monic series B. Index 0 of each vector is unused.
///
///   M_k = sum_{j=1}^{k} C(k,j) sum_{sum(i_t+1)=k}   B_{i_1}...B_{i_j}
///   P_k = sum_{j=1}^{k} C(k,j) sum_{sum(i_t+1)=k+1} B_{i_1}...B_{i_j}
///
/// With b(x) = sum_i B_i x^{i+1}, the inner sums are [x^k] b^j and [x^{k+1}] b^j,
/// so both sequences come from the convolution powers of b. Note that P_k stops
/// at j = k and so omits the B_0^{k+1} term of b^{k+1}.
struct CompositionSums {
    std::vector<Dyadic> M;
    std::vector<Dyadic> P;
};

inline CompositionSums composition_sums(const MonicSeries &B, std::size_t m_max, std::size_t p_max, unsigned jobs = 1)
{
    if (m_max >= 1 && B.truncation() + 1 < m_max) {
        throw std::invalid_argument("composition_sums: M_" + std::to_string(m_max) + " needs B through index " +
                                    std::to_string(m_max - 1));
    }
    if (p_max >= 1 && B.truncation() < p_max) {
        throw std::invalid_argument("composition_sums: P_" + std::to_string(p_max) + " needs B through index " +
                                    std::to_string(p_max));
    }
    CompositionSums out;
    out.M.resize(m_max + 1);
    out.P.resize(p_max + 1);
    const std::size_t top = std::max(m_max, p_max + 1); // highest x-degree consulted
    const std::size_t j_max = std::max(m_max, p_max);
    if (top == 0) {
        return out;
    }

    std::vector<Dyadic> b(top + 1);
    for (std::size_t i = 0; i + 1 <= top && i <= B.truncation(); ++i) {
        b[i + 1] = B[i];
    }

    std::vector<Dyadic> power = b; // b^j, whose lowest possible degree is j
    for (std::size_t j = 1; j <= j_max; ++j) {
        parallel_for(j, std::max(m_max, p_max) + 1, jobs, [&](std::size_t k) {
            if (k <= m_max && !power[k].is_zero()) {
                out.M[k] += power[k] * binomial(k, j);
            }
            if (k <= p_max && !power[k + 1].is_zero()) {
                out.P[k] += power[k + 1] * binomial(k, j);
            }
        });
        if (j < j_max) {
            power = truncated_product(power, b, top, j + 1, jobs);
        }
    }
    return out;
}

inline std::vector<Dyadic> M_sequence(const MonicSeries &B, std::size_t k_max, unsigned jobs = 1)
{
    return composition_sums(B, k_max, 0, jobs).M;
}

inline std::vector<Dyadic> P_sequence(const MonicSeries &B, std::size_t k_max, unsigned jobs = 1)
{
    return composition_sums(B, 0, k_max, jobs).P;
}

/// Inverse series via the recursion
///   C_0 = -B_0,  C_l = -sum_{k=0}^{l-1} C_k M_{l-k} - (M_{l+1} - P_l).
///
/// M_{L+1} and P_L only touch B_0..B_L, so the output is valid through the
/// input's own truncation L.
inline MonicSeries revert_lemma5(const MonicSeries &B, unsigned jobs = 1)
{
    const std::size_t L = B.truncation();
    const CompositionSums s = composition_sums(B, L + 1, L, jobs);
    std::vector<Dyadic> C(L + 1);
    C[0] = -B[0];
    for (std::size_t ell = 1; ell <= L; ++ell) {
        Dyadic acc;
        for (std::size_t k = 0; k < ell; ++k) {
            acc.add_product(C[k], s.M[ell - k]);
        }
        acc += s.M[ell + 1];
        acc -= s.P[ell];
        C[ell] = -acc;
    }
    return MonicSeries(std::move(C));
}

/// Inverse series by matching coefficients of psi(phi(c)) = c directly.
///
/// Writing phi(c) = c (1 + u(x)), x = 1/c, and v = (1 + u)^{-1}, we have
/// phi^{-l} = x^l v^l, and the coefficient of x^m gives the triangular system
///   C_m = -B_m - sum_{l=1}^{m-1} C_l [x^{m-l}] v^l.
inline MonicSeries revert_oracle(const MonicSeries &B, unsigned jobs = 1)
{
    const std::size_t L = B.truncation();
    std::vector<Dyadic> C(L + 1);
    C[0] = -B[0];
    if (L == 0) {
        return MonicSeries(std::move(C));
    }
    const UnitSeries v = inverse_unit(B.as_unit().truncated(L));
    std::vector<Dyadic> pending(L + 1); // pending[m] = sum over already-known C_l of their x^m contribution
    std::vector<Dyadic> power(v.coeffs().begin(), v.coeffs().end());
    for (std::size_t ell = 1; ell <= L; ++ell) {
        C[ell] = -(B[ell] + pending[ell]);
        if (ell == L) {
            break;
        }
        const Dyadic &c = C[ell];
        if (!c.is_zero()) {
            for (std::size_t d = 1; ell + d <= L; ++d) {
                pending[ell + d].add_product(c, power[d]);
            }
        }
        power = truncated_product(power, v.coeffs(), L - ell - 1, 0, jobs);
    }
    return MonicSeries(std::move(C));
}

/// Substitutes w = phi(c) into psi(w) and returns the largest T such that
/// psi(phi(c)) = c + 0 + 0/c + ... + 0/c^T. For an exact inverse pair, T = L.
/// Returns -1 when even the constant term fails to cancel.
inline std::int64_t compose_check(const MonicSeries &C, const MonicSeries &B, unsigned jobs = 1)
{
    if (C.truncation() != B.truncation()) {
        throw std::invalid_argument("compose_check: truncations differ");
    }
    const std::size_t L = B.truncation();
    std::vector<Dyadic> residual(B.coeffs().begin(), B.coeffs().end());
    residual[0] += C[0];
    if (L >= 1) {
        // y = 1/phi = x v(x)
        const UnitSeries v = inverse_unit(B.as_unit().truncated(L));
        std::vector<Dyadic> y(L + 1);
        for (std::size_t d = 1; d <= L; ++d) {
            y[d] = v[d - 1];
        }
        // Horner in y: sum_{l=1}^{L} C_l y^l = y (C_1 + y (C_2 + ... + y C_L))
        std::vector<Dyadic> acc(L + 1);
        acc[0] = C[L];
        for (std::size_t ell = L - 1; ell >= 1; --ell) {
            acc = truncated_product(y, acc, L, 1, jobs);
            acc[0] = C[ell];
        }
        acc = truncated_product(y, acc, L, 1, jobs);
        for (std::size_t m = 0; m <= L; ++m) {
            residual[m] += acc[m];
        }
    }
    for (std::size_t m = 0; m <= L; ++m) {
        if (!residual[m].is_zero()) {
            return static_cast<std::int64_t>(m) - 1;
        }
    }
    return static_cast<std::int64_t>(L);
}

} // namespace ml
