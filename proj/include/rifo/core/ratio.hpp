#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rifo {

/// Exact non-reduced rational number. Comparisons cross-multiply in 128-bit
/// arithmetic, so any pair of 64-bit numerators and denominators compares
/// without rounding.
class Ratio {
public:
    constexpr Ratio() = default;
    constexpr Ratio(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) {
            throw std::domain_error("Ratio: zero denominator");
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }
    static constexpr Ratio integer(std::int64_t v) { return Ratio(v, 1); }

    /// Converts a decimal configuration value to the closest fraction with
    /// denominator 10^6. Used for k, which configs carry as a decimal.
    static Ratio from_decimal(double value);

    constexpr std::int64_t num() const noexcept { return num_; }
    constexpr std::int64_t den() const noexcept { return den_; }

    Ratio reduced() const {
        const std::int64_t g = std::gcd(num_, den_);
        return g == 0 ? *this : Ratio(num_ / g, den_ / g);
    }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string to_string() const;

    friend constexpr std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
        const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend constexpr bool operator==(const Ratio& a, const Ratio& b) noexcept {
        return (a <=> b) == std::strong_ordering::equal;
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace rifo
