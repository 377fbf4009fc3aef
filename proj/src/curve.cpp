#include "epicusp/curve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace epicusp {

double PlanePoint::norm() const noexcept { return std::hypot(x, y); }

double dot(PlanePoint p, PlanePoint q) noexcept { return p.x * q.x + p.y * q.y; }

double cross(PlanePoint p, PlanePoint q) noexcept { return p.x * q.y - p.y * q.x; }

double distance(PlanePoint p, PlanePoint q) noexcept { return (p - q).norm(); }

CurveSpec::CurveSpec(std::vector<ExponentialTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) {
        throw std::invalid_argument("CurveSpec needs at least one term");
    }
}

CurveSpec CurveSpec::from_frequencies(std::span<const int> frequencies) {
    std::vector<ExponentialTerm> terms;
    terms.reserve(frequencies.size());
    for (int f : frequencies) {
        if (f < 1) {
            throw std::invalid_argument("frequency must be >= 1, got " + std::to_string(f));
        }
        terms.push_back({f, Complex{1.0, 0.0}});
    }
    return CurveSpec(std::move(terms));
}

double CurveSpec::scale() const noexcept {
    double total = 0.0;
    for (const auto& term : terms_) {
        total += std::abs(term.weight);
    }
    return total;
}

double CurveSpec::derivative_scale() const noexcept {
    double total = 0.0;
    for (const auto& term : terms_) {
        total += std::abs(term.weight) * std::abs(term.frequency);
    }
    return kTwoPi * total;
}

TwoTermSpec::TwoTermSpec(int a, int b, double s) : a_(a), b_(b), s_(s) {
    if (a < 1 || b <= a) {
        throw std::invalid_argument("two-term curve requires 1 <= a < b, got a=" + std::to_string(a) +
                                    " b=" + std::to_string(b));
    }
    if (!(s >= -1.0 && s <= 1.0)) {
        throw std::invalid_argument("two-term curve requires -1 <= s <= 1, got s=" + std::to_string(s));
    }
}

CurveSpec TwoTermSpec::to_curve() const {
    return CurveSpec({{a_, Complex{1.0 - s_, 0.0}}, {b_, Complex{1.0 + s_, 0.0}}});
}

double reduce_period(double t) noexcept {
    double r = t - std::floor(t);
    // floor can round a tiny negative t up to exactly 1.
    return r >= 1.0 ? 0.0 : r;
}

Complex unit_phase(double turns) noexcept {
    const double u = reduce_period(turns);
    // Split into quadrant + remainder in [-1/8, 1/8] so quarter turns are exact.
    const double q = std::nearbyint(4.0 * u);
    const double r = u - 0.25 * q;
    const double c = std::cos(kTwoPi * r);
    const double s = std::sin(kTwoPi * r);
    switch (static_cast<int>(q) & 3) {
        case 0: return {c, s};
        case 1: return {-s, c};
        case 2: return {-c, -s};
        default: return {s, -c};
    }
}

namespace {

// frac(f * t) for t already in [0, 1).
double phase_turns(int frequency, double t_reduced) noexcept {
    return reduce_period(static_cast<double>(frequency) * t_reduced);
}

Complex power_of_i(int k) noexcept {
    switch (k & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

PlanePoint evaluate(const CurveSpec& spec, double t) noexcept {
    const double tr = reduce_period(t);
    Complex sum{0.0, 0.0};
    for (const auto& term : spec.terms()) {
        sum += term.weight * unit_phase(phase_turns(term.frequency, tr));
    }
    return PlanePoint::from_complex(sum);
}

PlanePoint derivative(const CurveSpec& spec, double t, int order) {
    if (order < 1) {
        throw std::invalid_argument("derivative order must be >= 1");
    }
    const double tr = reduce_period(t);
    const Complex rot = power_of_i(order);
    Complex sum{0.0, 0.0};
    for (const auto& term : spec.terms()) {
        const double magnitude = std::pow(kTwoPi * term.frequency, order);
        sum += term.weight * magnitude * unit_phase(phase_turns(term.frequency, tr));
    }
    return PlanePoint::from_complex(rot * sum);
}

double vertical_tolerance(const CurveSpec& spec) noexcept { return 1e-9 * spec.derivative_scale(); }

std::optional<double> parametric_derivative(const CurveSpec& spec, double t) {
    const PlanePoint d = derivative(spec, t, 1);
    if (std::abs(d.x) <= vertical_tolerance(spec)) {
        return std::nullopt;
    }
    return d.y / d.x;
}

CurveSpec rotate(const CurveSpec& spec, double phi) {
    const Complex turn = std::polar(1.0, phi);
    std::vector<ExponentialTerm> terms(spec.terms().begin(), spec.terms().end());
    for (auto& term : terms) {
        term.weight *= turn;
    }
    return CurveSpec(std::move(terms));
}

std::vector<PlanePoint> sample(const CurveSpec& spec, int n) {
    if (n < 2) {
        throw std::invalid_argument("sample needs n >= 2");
    }
    std::vector<PlanePoint> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        points.push_back(evaluate(spec, static_cast<double>(j) / n));
    }
    return points;
}

}  // namespace epicusp
