#include "epicusp/rational.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace epicusp {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Rational::to_string() const {
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view text) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    std::int64_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return std::nullopt;
    }
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (!num || !den || *den == 0) {
        return std::nullopt;
    }
    return Rational(*num, *den);
}

std::optional<double> parse_real_or_rational(std::string_view text) {
    if (auto r = parse_rational(text)) {
        return r->to_double();
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), last, value);
    if (ec != std::errc{} || ptr != last || text.empty() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

}  // namespace epicusp
