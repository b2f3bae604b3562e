#pragma once

#include "dyadic.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ml {

/// Coefficients d = first..last of a * b, where a and b are dense coefficient
/// vectors. Entries outside [first, last] are left zero. Output has last + 1 slots.
inline std::vector<Dyadic> truncated_product(std::span<const Dyadic> a, std::span<const Dyadic> b, std::size_t last,
                                             std::size_t first = 0, unsigned jobs = 1)
{
    std::vector<Dyadic> out(last + 1);
    if (a.empty() || b.empty()) {
        return out;
    }
    parallel_for(first, last + 1, jobs, [&](std::size_t d) {
        const std::size_t lo = d >= b.size() ? d - (b.size() - 1) : 0;
        const std::size_t hi = std::min(d, a.size() - 1);
        Dyadic acc;
        for (std::size_t i = lo; i <= hi; ++i) {
            acc.add_product(a[i], b[d - i]);
        }
        out[d] = std::move(acc);
    });
    return out;
}

/// Truncated power series 1 + b_1 x + ... + b_L x^L over dyadics.
class UnitSeries {
public:
    explicit UnitSeries(std::vector<Dyadic> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty() || coeffs_[0] != Dyadic(1)) {
            throw std::invalid_argument("UnitSeries: constant term must be 1");
        }
    }

    UnitSeries(std::initializer_list<Dyadic> coeffs) : UnitSeries(std::vector<Dyadic>(coeffs)) {}

    static UnitSeries one(std::size_t truncation)
    {
        std::vector<Dyadic> c(truncation + 1);
        c[0] = Dyadic(1);
        return UnitSeries(std::move(c));
    }

    std::size_t truncation() const noexcept { return coeffs_.size() - 1; }
    const Dyadic &operator[](std::size_t k) const { return coeffs_.at(k); }
    std::span<const Dyadic> coeffs() const noexcept { return coeffs_; }

    /// Copy truncated to a smaller index.
    UnitSeries truncated(std::size_t truncation) const
    {
        if (truncation > this->truncation()) {
            throw std::invalid_argument("UnitSeries::truncated: cannot extend a truncated series");
        }
        return UnitSeries(std::vector<Dyadic>(coeffs_.begin(), coeffs_.begin() + truncation + 1));
    }

    friend bool operator==(const UnitSeries &, const UnitSeries &) = default;

private:
    std::vector<Dyadic> coeffs_;
};

inline UnitSeries mul_unit(const UnitSeries &a, const UnitSeries &b, unsigned jobs = 1)
{
    const std::size_t n = std::min(a.truncation(), b.truncation());
    return UnitSeries(truncated_product(a.coeffs(), b.coeffs(), n, 0, jobs));
}

inline UnitSeries pow_unit(const UnitSeries &a, std::uint64_t e, unsigned jobs = 1)
{
    if (e == 0) {
        throw std::invalid_argument("pow_unit: exponent must be positive");
    }
    UnitSeries result = UnitSeries::one(a.truncation());
    UnitSeries base = a;
    for (;;) {
        if (e & 1u) {
            result = mul_unit(result, base, jobs);
        }
        e >>= 1;
        if (e == 0) {
            return result;
        }
        base = mul_unit(base, base, jobs);
    }
}

/// The unique r with r(0) = 1 and r^2 = a, solved coefficient by coefficient:
/// 2 r_k = a_k - sum_{i=1}^{k-1} r_i r_{k-i}.
inline UnitSeries sqrt_unit(const UnitSeries &a)
{
    const std::size_t n = a.truncation();
    std::vector<Dyadic> r(n + 1);
    r[0] = Dyadic(1);
    for (std::size_t k = 1; k <= n; ++k) {
        Dyadic cross;
        for (std::size_t i = 1; 2 * i < k; ++i) {
            cross.add_product(r[i], r[k - i]);
        }
        cross.div_pow2(-1);
        if (k % 2 == 0) {
            cross.add_product(r[k / 2], r[k / 2]);
        }
        Dyadic rk = a[k] - cross;
        r[k] = std::move(rk.div_pow2(1));
    }
    return UnitSeries(std::move(r));
}

/// The 2^n-th root with constant term 1, by n successive square roots.
inline UnitSeries root_pow2(const UnitSeries &a, unsigned n)
{
    UnitSeries r = a;
    for (unsigned i = 0; i < n; ++i) {
        r = sqrt_unit(r);
    }
    return r;
}

/// Multiplicative inverse: v_k = -sum_{i=1}^{k} a_i v_{k-i}.
inline UnitSeries inverse_unit(const UnitSeries &a)
{
    const std::size_t n = a.truncation();
    std::vector<Dyadic> v(n + 1);
    v[0] = Dyadic(1);
    for (std::size_t k = 1; k <= n; ++k) {
        Dyadic acc;
        for (std::size_t i = 1; i <= k; ++i) {
            acc.add_product(a[i], v[k - i]);
        }
        v[k] = -acc;
    }
    return UnitSeries(std::move(v));
}

/// Truncated series w + c_0 + c_1/w + ... + c_L/w^L. The leading w is implicit.
class MonicSeries {
public:
    MonicSeries() = default;

    explicit MonicSeries(std::vector<Dyadic> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw std::invalid_argument("MonicSeries: need at least the constant coefficient");
        }
    }

    MonicSeries(std::initializer_list<Dyadic> coeffs) : MonicSeries(std::vector<Dyadic>(coeffs)) {}

    /// The series w itself, all coefficients zero, valid through index L.
    static MonicSeries identity(std::size_t truncation) { return MonicSeries(std::vector<Dyadic>(truncation + 1)); }

    std::size_t truncation() const noexcept { return coeffs_.size() - 1; }
    const Dyadic &operator[](std::size_t ell) const { return coeffs_.at(ell); }
    std::span<const Dyadic> coeffs() const noexcept { return coeffs_; }

    MonicSeries truncated(std::size_t truncation) const
    {
        if (truncation > this->truncation()) {
            throw std::invalid_argument("MonicSeries::truncated: cannot extend a truncated series");
        }
        return MonicSeries(std::vector<Dyadic>(coeffs_.begin(), coeffs_.begin() + truncation + 1));
    }

    /// Copy with coefficient ell replaced.
    MonicSeries with_coefficient(std::size_t ell, Dyadic value) const
    {
        std::vector<Dyadic> c = coeffs_;
        c.at(ell) = std::move(value);
        return MonicSeries(std::move(c));
    }

    /// 1 + c_0 x + c_1 x^2 + ... with x = 1/w, i.e. the series divided by w.
    UnitSeries as_unit() const
    {
        std::vector<Dyadic> u(coeffs_.size() + 1);
        u[0] = Dyadic(1);
        std::copy(coeffs_.begin(), coeffs_.end(), u.begin() + 1);
        return UnitSeries(std::move(u));
    }

    /// Inverse of as_unit: reads a unit series in x = 1/c back as c * u(x).
    static MonicSeries from_unit(const UnitSeries &u)
    {
        if (u.truncation() == 0) {
            throw std::invalid_argument("MonicSeries::from_unit: need truncation >= 1");
        }
        return MonicSeries(std::vector<Dyadic>(u.coeffs().begin() + 1, u.coeffs().end()));
    }

    friend bool operator==(const MonicSeries &, const MonicSeries &) = default;

private:
    std::vector<Dyadic> coeffs_;
};

} // namespace ml
