#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace epicusp {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// A point of the plane, also read as the complex number x + iy.
struct PlanePoint {
    double x = 0.0;
    double y = 0.0;

    Complex to_complex() const noexcept { return {x, y}; }
    static PlanePoint from_complex(Complex z) noexcept { return {z.real(), z.imag()}; }

    double norm() const noexcept;

    friend PlanePoint operator+(PlanePoint p, PlanePoint q) noexcept { return {p.x + q.x, p.y + q.y}; }
    friend PlanePoint operator-(PlanePoint p, PlanePoint q) noexcept { return {p.x - q.x, p.y - q.y}; }
    friend PlanePoint operator*(double k, PlanePoint p) noexcept { return {k * p.x, k * p.y}; }
    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

double dot(PlanePoint p, PlanePoint q) noexcept;
double cross(PlanePoint p, PlanePoint q) noexcept;
double distance(PlanePoint p, PlanePoint q) noexcept;

/// One summand w * exp(2 pi i f t).
struct ExponentialTerm {
    int frequency = 1;
    Complex weight{1.0, 0.0};

    friend bool operator==(const ExponentialTerm&, const ExponentialTerm&) = default;
};

/// A finite exponential sum, one-periodic in t.
class CurveSpec {
public:
    /// Throws std::invalid_argument for an empty term list.
    explicit CurveSpec(std::vector<ExponentialTerm> terms);

    /// Unit-weight sum of exp(2 pi i f t) over the given frequencies; every
    /// frequency must be >= 1 and repeats act as integer weights.
    static CurveSpec from_frequencies(std::span<const int> frequencies);

    std::span<const ExponentialTerm> terms() const noexcept { return terms_; }

    /// Sum of |w|; an upper bound on |gamma(t)|.
    double scale() const noexcept;

    /// 2 pi sum |w||f|; an upper bound on |gamma'(t)|.
    double derivative_scale() const noexcept;

    friend bool operator==(const CurveSpec&, const CurveSpec&) = default;

private:
    std::vector<ExponentialTerm> terms_;
};

/// (1 - s) exp(2 pi i a t) + (1 + s) exp(2 pi i b t) with 1 <= a < b and -1 <= s <= 1.
class TwoTermSpec {
public:
    /// Throws std::invalid_argument when the parameter constraints fail.
    TwoTermSpec(int a, int b, double s);

    int a() const noexcept { return a_; }
    int b() const noexcept { return b_; }
    double s() const noexcept { return s_; }

    /// Exactly [(a, 1 - s), (b, 1 + s)].
    CurveSpec to_curve() const;

    operator CurveSpec() const { return to_curve(); }  // NOLINT(google-explicit-constructor)

private:
    int a_;
    int b_;
    double s_;
};

/// exp(2 pi i turns); exact at quarter turns.
Complex unit_phase(double turns) noexcept;

/// t reduced into [0, 1).
double reduce_period(double t) noexcept;

PlanePoint evaluate(const CurveSpec& spec, double t) noexcept;

/// d^order/dt^order gamma(t); order >= 1, throws std::invalid_argument otherwise.
PlanePoint derivative(const CurveSpec& spec, double t, int order = 1);

/// Threshold below which |x'| counts as zero when forming y'/x'.
double vertical_tolerance(const CurveSpec& spec) noexcept;

/// y'(t)/x'(t), or nullopt where |x'(t)| <= vertical_tolerance(spec).
/// Vertical tangents and singular points both come back empty; see
/// classify_point for telling them apart.
std::optional<double> parametric_derivative(const CurveSpec& spec, double t);

/// Multiplies every weight by exp(i phi), rotating the image about the origin.
CurveSpec rotate(const CurveSpec& spec, double phi);

/// gamma(j / n) for j = 0 .. n-1; n >= 2.
std::vector<PlanePoint> sample(const CurveSpec& spec, int n);

}  // namespace epicusp
