#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ml {

/// 2-adic order of a value: a machine integer, or +infinity for zero.
///
/// Infinity is a distinct state rather than a large sentinel, so it can
/// never compare equal to a genuine valuation.
class Order {
public:
    constexpr Order(std::int64_t value) noexcept : value_(value) {}

    static constexpr Order infinity() noexcept { return Order(); }

    constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
    constexpr bool is_finite() const noexcept { return value_.has_value(); }

    std::int64_t value() const
    {
        if (!value_) {
            throw std::logic_error("Order::value: order is infinite");
        }
        return *value_;
    }

    constexpr bool operator==(const Order &) const noexcept = default;

    constexpr std::strong_ordering operator<=>(const Order &other) const noexcept
    {
        if (is_infinite() || other.is_infinite()) {
            return is_infinite() <=> other.is_infinite();
        }
        return *value_ <=> *other.value_;
    }

    /// ord(xy) = ord(x) + ord(y); infinity absorbs.
    friend constexpr Order operator+(const Order &a, const Order &b) noexcept
    {
        if (a.is_infinite() || b.is_infinite()) {
            return infinity();
        }
        return Order(*a.value_ + *b.value_);
    }

    friend constexpr Order operator-(const Order &a, std::int64_t b) noexcept
    {
        if (a.is_infinite()) {
            return infinity();
        }
        return Order(*a.value_ - b);
    }

    std::string to_string() const { return value_ ? std::to_string(*value_) : std::string("inf"); }

    friend std::ostream &operator<<(std::ostream &os, const Order &o) { return os << o.to_string(); }

private:
    constexpr Order() noexcept = default;

    std::optional<std::int64_t> value_;
};

inline constexpr Order min(const Order &a, const Order &b) noexcept { return b < a ? b : a; }

} // namespace ml
