#pragma once

#include <utility>
#include <vector>

#include "epicusp/curve.hpp"
#include "epicusp/rational.hpp"

namespace epicusp {

inline constexpr int kDefaultWindingSamples = 4096;

struct WindingResult {
    int value = 0;
    /// |total turning / 2 pi - value|.
    double residual = 0.0;
    /// Grid size that produced the value (after any refinement).
    int samples = 0;
};

/// Parameters of the kernel 1 / (beta + alpha exp(2 pi i t)); beta > 0.
struct KernelParams {
    double alpha = 0.0;
    double beta = 1.0;
};

/// Winding number of a two-term curve about the origin: a for s < 0, b for
/// s > 0. Throws OnCurveError at s = 0, where the curve passes through 0.
int winding_closed_form(const TwoTermSpec& spec);

/// Winding number about z0 by accumulating arg(gamma(t) - z0) over a uniform
/// grid of n >= 64 steps. Each step contributes its principal increment in
/// (-pi, pi]; the rounded total over 2 pi is the result.
///
/// Throws OnCurveError if a grid sample comes within 1e-9 * scale of z0 and
/// UnresolvedError if some step still turns by more than pi/2 after one
/// doubling of the grid.
WindingResult winding_numeric(const CurveSpec& spec, PlanePoint z0 = {}, int n = kDefaultWindingSamples);

/// Trapezoidal value of the integral over [0, 1] of 1 / (beta + alpha exp(2 pi i t))
/// on an n-point grid. Converges geometrically to 1/beta when beta > |alpha|
/// and to 0 when beta < |alpha|.
/// Throws NearPoleError when |beta - |alpha|| < 1e-6 * max(beta, |alpha|).
Complex kernel_integral(const KernelParams& params, int n);

/// The two summand integrals of the winding integral of a two-term curve:
///   a (1-s) int 1 / ((1-s) + (1+s) e^{2 pi i (b-a) t}) dt
///   b (1+s) int 1 / ((1-s) e^{2 pi i (a-b) t} + (1+s)) dt
/// each evaluated by the trapezoidal rule on n points. Their sum is the
/// winding number about the origin.
std::pair<Complex, Complex> winding_decomposition_check(const TwoTermSpec& spec, int n = kDefaultWindingSamples);

/// Parameters h / (2(b-a)), h odd, where gamma_{a,b}^0 vanishes; b - a values in [0, 1).
std::vector<Rational> zeros_of_curve(int a, int b);

}  // namespace epicusp
