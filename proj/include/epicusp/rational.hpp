#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace epicusp {

/// Exact fraction num/den with den > 0 and gcd(|num|, den) = 1.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "p/q", or "p" when the denominator is 1.
    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& lhs, const Rational& rhs) noexcept {
        return lhs.num_ * rhs.den_ < rhs.num_ * lhs.den_;
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Parses "p/q" exactly; returns nullopt for anything else.
std::optional<Rational> parse_rational(std::string_view text);

/// Parses a real given either as a decimal literal or as an exact "p/q"
/// fraction. A fraction is reduced exactly and converted to double once.
std::optional<double> parse_real_or_rational(std::string_view text);

}  // namespace epicusp
