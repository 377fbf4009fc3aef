#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "epicusp/curve.hpp"
#include "epicusp/rational.hpp"

namespace epicusp {

enum class PointKind { Regular, VerticalTangent, HorizontalTangent, Singular };

std::string_view to_string(PointKind kind) noexcept;

/// |gamma'| components at or below this count as zero: 1e-7 * 2 pi sum |w||f|.
double singular_tolerance(const CurveSpec& spec) noexcept;

PointKind classify_point(const CurveSpec& spec, double t);

/// Limits of the unit tangent approaching t from below and from above.
struct TangentFlip {
    PlanePoint tangent_left;
    PlanePoint tangent_right;
    double flip_dot = 0.0;
};

/// Evidence that gamma_{a,b}^s has a cusp at t: the one-sided unit tangents
/// point in opposite directions.
struct CuspCertificate {
    double s = 0.0;
    double t = 0.0;
    PlanePoint tangent_left;
    PlanePoint tangent_right;
    double flip_dot = 0.0;
    /// The cusp lies on a locus covered by a proof (a = 1).
    bool proven = false;
};

inline constexpr double kDefaultCuspDelta = 1e-3;
inline constexpr double kFlipAcceptance = -1.0 + 1e-6;

/// One-sided unit tangents at t - d and t + d for d = delta / 4^k, k = 0..3.
/// Successive levels are Richardson-extrapolated to d -> 0; the flip is
/// accepted when every extrapolated dot product is <= -1 + 1e-6.
///
/// Returns nullopt when the tangents do not reverse (a rejected candidate).
/// Throws NotSingularError if t is not a singular point and
/// std::invalid_argument unless 0 < delta <= 1e-3.
std::optional<TangentFlip> certify_tangent_flip(const CurveSpec& spec, double t, double delta = kDefaultCuspDelta);

std::optional<CuspCertificate> certify_cusp(const TwoTermSpec& spec, double t, double delta = kDefaultCuspDelta);

/// Conjectured cusp locus of the two-term family.
struct CuspLocus {
    Rational s_bar;                 // (a - b) / (a + b)
    std::vector<Rational> t_values; // h / (2(b - a)), h odd
    bool proven = false;            // a == 1
};

CuspLocus predicted_cusp_locus(int a, int b);

struct CuspSearch {
    std::vector<CuspCertificate> certificates;
    int candidates = 0;   // grid minima of |gamma'|^2 handed to Newton
    int unconverged = 0;  // Newton failures (NoConvergence)
    int rejected = 0;     // converged but failed the tangent-flip test
};

inline constexpr int kDefaultCuspGrid = 256;

/// Scans (s, t) in [-1 + 1e-3, 1 - 1e-3] x [0, 1) for local minima of
/// |gamma'|^2, refines each by damped Newton on (x', y') jointly in (s, t),
/// certifies survivors and returns them deduplicated and sorted by t.
/// Both grids must be >= 64.
CuspSearch find_cusps(int a, int b, int s_grid = kDefaultCuspGrid, int t_grid = kDefaultCuspGrid);

/// pi (1/2 - 1/(b - a)): turns the first predicted cusp onto the positive y-axis when a = 1.
double rotation_angle(int a, int b);

/// Closed-form parametric derivative of the rotated curve at s = (a-b)/(a+b):
/// -tan(pi (1/(b-a) - (a+b) t)); nullopt at the poles of tan.
std::optional<double> rotated_param_deriv(int a, int b, double t);

/// Quarter of the spacing between neighbouring predicted cusps.
double default_loop_half_width(int a, int b);

/// Number of sign changes of the x-component of gamma_{a,b}^s, rotated so the
/// predicted cusp direction at t_center lies on the y-axis, over 1001 points in
/// [t_center - half_width, t_center + half_width]. A value of 3 means a small
/// loop has formed around the cusp position; 1 means none.
///
/// Throws WindowTooWideError if a second predicted cusp parameter falls inside
/// the window.
int loop_birth_count(int a, int b, double s, double t_center, double half_width);
int loop_birth_count(int a, int b, double s, double t_center);

/// Parameters in [0, 1) where x'(t) = 0, i.e. where y'/x' is undefined,
/// sorted ascending. Uses the closed form for (a, b) = (1, 3) and numerical
/// root finding otherwise.
std::vector<double> undefined_derivative_set(int a, int b, double s);

/// Numerical roots of x'(t) over one period, including tangential (double) roots.
std::vector<double> undefined_derivative_set_numeric(const CurveSpec& spec);

}  // namespace epicusp
