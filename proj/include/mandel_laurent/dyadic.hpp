#pragma once

#include "order.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ml {

/// 2-adic order of a nonzero integer; +inf for zero.
inline Order ord(const mpz_class &m)
{
    if (sgn(m) == 0) {
        return Order::infinity();
    }
    return Order(static_cast<std::int64_t>(mpz_scan1(m.get_mpz_t(), 0)));
}

/// ord(m/n) = ord(m) - ord(n) for an unreduced fraction with n != 0.
inline Order ord_fraction(const mpz_class &m, const mpz_class &n)
{
    if (sgn(n) == 0) {
        throw std::domain_error("ord_fraction: zero denominator");
    }
    return ord(m) - ord(n).value();
}

/// Exact rational K / 2^q.
///
/// Always held in normalized form: K odd, or the distinguished zero state.
/// The exponent may be negative, so integers such as 12 are stored as 3/2^-2.
class Dyadic {
public:
    Dyadic() = default;

    Dyadic(long value) : Dyadic(mpz_class(value), 0) {}

    Dyadic(mpz_class numerator, std::int64_t exponent) : num_(std::move(numerator)), exp_(exponent)
    {
        normalize();
    }

    static Dyadic pow2(std::int64_t e) { return Dyadic(mpz_class(1), -e); }

    bool is_zero() const noexcept { return sgn(num_) == 0; }
    const mpz_class &numerator() const noexcept { return num_; }
    std::int64_t exponent() const noexcept { return exp_; }
    int sign() const noexcept { return sgn(num_); }

    Order order() const { return is_zero() ? Order::infinity() : Order(-exp_); }

    Dyadic operator-() const
    {
        Dyadic r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Dyadic &operator+=(const Dyadic &y)
    {
        if (y.is_zero()) {
            return *this;
        }
        if (is_zero()) {
            return *this = y;
        }
        if (exp_ > y.exp_) {
            // odd + even stays odd: no renormalization needed
            mpz_class t;
            mpz_mul_2exp(t.get_mpz_t(), y.num_.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_ - y.exp_));
            num_ += t;
        } else if (exp_ < y.exp_) {
            mpz_mul_2exp(num_.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(y.exp_ - exp_));
            num_ += y.num_;
            exp_ = y.exp_;
        } else {
            num_ += y.num_;
            normalize();
        }
        return *this;
    }

    Dyadic &operator-=(const Dyadic &y) { return *this += -y; }

    Dyadic &operator*=(const Dyadic &y)
    {
        if (is_zero() || y.is_zero()) {
            return *this = Dyadic();
        }
        num_ *= y.num_;
        exp_ += y.exp_;
        return *this;
    }

    /// Multiply by an arbitrary integer (e.g. a binomial weight).
    Dyadic &operator*=(const mpz_class &k)
    {
        num_ *= k;
        normalize();
        return *this;
    }

    /// Exact division by 2^e.
    Dyadic &div_pow2(std::int64_t e)
    {
        if (!is_zero()) {
            exp_ += e;
        }
        return *this;
    }

    friend Dyadic operator+(Dyadic x, const Dyadic &y) { return x += y; }
    friend Dyadic operator-(Dyadic x, const Dyadic &y) { return x -= y; }
    friend Dyadic operator*(Dyadic x, const Dyadic &y) { return x *= y; }
    friend Dyadic operator*(Dyadic x, const mpz_class &k) { return x *= k; }

    /// this += a * b without a temporary Dyadic for the product.
    void add_product(const Dyadic &a, const Dyadic &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return;
        }
        Dyadic p;
        p.num_ = a.num_ * b.num_;
        p.exp_ = a.exp_ + b.exp_;
        *this += p;
    }

    friend bool operator==(const Dyadic &x, const Dyadic &y)
    {
        if (x.is_zero() || y.is_zero()) {
            return x.is_zero() == y.is_zero();
        }
        return x.exp_ == y.exp_ && x.num_ == y.num_;
    }

    /// Bit-exact text form: "0", or "K/2^q" with K odd and signed.
    std::string to_string() const
    {
        if (is_zero()) {
            return "0";
        }
        return num_.get_str() + "/2^" + std::to_string(exp_);
    }

    /// Inverse of to_string. Rejects even numerators and malformed input.
    static Dyadic parse(std::string_view text)
    {
        if (text == "0") {
            return Dyadic();
        }
        const auto slash = text.find("/2^");
        if (slash == std::string_view::npos || slash == 0) {
            throw std::invalid_argument("Dyadic::parse: expected \"K/2^q\", got \"" + std::string(text) + "\"");
        }
        const std::string num_text(text.substr(0, slash));
        const std::string exp_text(text.substr(slash + 3));
        if (!valid_integer(num_text) || !valid_integer(exp_text)) {
            throw std::invalid_argument("Dyadic::parse: malformed \"" + std::string(text) + "\"");
        }
        mpz_class k(num_text, 10);
        if (mpz_even_p(k.get_mpz_t())) {
            throw std::invalid_argument("Dyadic::parse: numerator must be odd in \"" + std::string(text) + "\"");
        }
        std::int64_t q = 0;
        try {
            q = std::stoll(exp_text);
        } catch (const std::out_of_range &) {
            throw std::invalid_argument("Dyadic::parse: exponent out of range in \"" + std::string(text) + "\"");
        }
        return Dyadic(std::move(k), q);
    }

    /// Lossy; for debug output only.
    double to_double() const
    {
        if (is_zero()) {
            return 0.0;
        }
        long e = 0;
        const double mant = mpz_get_d_2exp(&e, num_.get_mpz_t());
        return std::ldexp(mant, static_cast<int>(e - exp_));
    }

    friend std::ostream &operator<<(std::ostream &os, const Dyadic &d) { return os << d.to_string(); }

private:
    static bool valid_integer(const std::string &s)
    {
        std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (i == s.size()) {
            return false;
        }
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                return false;
            }
        }
        return true;
    }

    void normalize()
    {
        if (sgn(num_) == 0) {
            exp_ = 0;
            return;
        }
        const mp_bitcnt_t shift = mpz_scan1(num_.get_mpz_t(), 0);
        if (shift != 0) {
            mpz_tdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), shift);
            exp_ -= static_cast<std::int64_t>(shift);
        }
    }

    mpz_class num_;
    std::int64_t exp_ = 0;
};

inline Order ord(const Dyadic &x) { return x.order(); }

/// Result of summing dyadic fractions with an a-priori order bound.
struct OrderCertificate {
    Dyadic sum;
    /// -p0, where p0 is the largest exponent among nonzero terms; +inf if all terms vanish.
    Order bound = Order::infinity();
    /// True iff an odd number of terms attain the bound, which forces ord(sum) == bound.
    bool attains_bound = false;
};

inline OrderCertificate sum_with_order_certificate(std::span<const Dyadic> terms)
{
    OrderCertificate cert;
    std::int64_t p0 = std::numeric_limits<std::int64_t>::min();
    std::size_t count = 0;
    for (const Dyadic &t : terms) {
        cert.sum += t;
        if (t.is_zero()) {
            continue;
        }
        if (t.exponent() > p0) {
            p0 = t.exponent();
            count = 1;
        } else if (t.exponent() == p0) {
            ++count;
        }
    }
    if (count > 0) {
        cert.bound = Order(-p0);
        cert.attains_bound = (count % 2) == 1;
    }
    return cert;
}

} // namespace ml
