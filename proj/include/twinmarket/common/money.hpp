#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>

namespace twinmarket {

/// Currency amount held as an integer count of ticks (0.01 units).
///
/// Cash and trade values are exact in this representation, so settlement
/// conserves total cash bit-for-bit.
class Money {
public:
    static constexpr std::int64_t kTicksPerUnit = 100;

    constexpr Money() = default;

    static constexpr Money from_ticks(std::int64_t ticks) { return Money(ticks); }
    static Money from_double(double amount) {
        return Money(static_cast<std::int64_t>(std::llround(amount * kTicksPerUnit)));
    }
    static Money floor_of(double amount) {
        return Money(static_cast<std::int64_t>(std::floor(amount * kTicksPerUnit + 1e-9)));
    }
    static Money ceil_of(double amount) {
        return Money(static_cast<std::int64_t>(std::ceil(amount * kTicksPerUnit - 1e-9)));
    }

    [[nodiscard]] constexpr std::int64_t ticks() const { return ticks_; }
    [[nodiscard]] constexpr double to_double() const {
        return static_cast<double>(ticks_) / kTicksPerUnit;
    }

    constexpr Money& operator+=(Money o) { ticks_ += o.ticks_; return *this; }
    constexpr Money& operator-=(Money o) { ticks_ -= o.ticks_; return *this; }
    friend constexpr Money operator+(Money a, Money b) { return Money(a.ticks_ + b.ticks_); }
    friend constexpr Money operator-(Money a, Money b) { return Money(a.ticks_ - b.ticks_); }
    friend constexpr Money operator*(Money a, std::int64_t q) { return Money(a.ticks_ * q); }
    friend constexpr Money operator*(std::int64_t q, Money a) { return Money(a.ticks_ * q); }
    friend constexpr auto operator<=>(Money, Money) = default;

    friend std::ostream& operator<<(std::ostream& os, Money m) { return os << m.to_double(); }

private:
    constexpr explicit Money(std::int64_t t) : ticks_(t) {}
    std::int64_t ticks_ = 0;
};

}  // namespace twinmarket
