#include "epicusp/winding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "epicusp/errors.hpp"

namespace epicusp {

int winding_closed_form(const TwoTermSpec& spec) {
    if (spec.s() == 0.0) {
        throw OnCurveError("winding number undefined at s = 0: the curve passes through the origin");
    }
    return spec.s() < 0.0 ? spec.a() : spec.b();
}

namespace {

struct TurningPass {
    double total = 0.0;
    bool resolved = true;
};

TurningPass accumulate_turning(const CurveSpec& spec, PlanePoint z0, int n, double dist_tol) {
    TurningPass pass;
    const PlanePoint start = evaluate(spec, 0.0) - z0;
    if (start.norm() <= dist_tol) {
        throw OnCurveError("base point lies on the curve at t = 0");
    }
    PlanePoint prev = start;
    for (int j = 1; j <= n; ++j) {
        const PlanePoint cur = j == n ? start : evaluate(spec, static_cast<double>(j) / n) - z0;
        if (cur.norm() <= dist_tol) {
            throw OnCurveError("base point lies on the curve at t = " + std::to_string(static_cast<double>(j) / n));
        }
        const double step = std::atan2(cross(prev, cur), dot(prev, cur));
        if (std::abs(step) > std::numbers::pi / 2) {
            pass.resolved = false;
        }
        pass.total += step;
        prev = cur;
    }
    return pass;
}

}  // namespace

WindingResult winding_numeric(const CurveSpec& spec, PlanePoint z0, int n) {
    if (n < 64) {
        throw std::invalid_argument("winding_numeric needs n >= 64");
    }
    const double dist_tol = 1e-9 * spec.scale();

    int grid = n;
    TurningPass pass = accumulate_turning(spec, z0, grid, dist_tol);
    if (!pass.resolved) {
        grid *= 2;
        pass = accumulate_turning(spec, z0, grid, dist_tol);
        if (!pass.resolved) {
            throw UnresolvedError("a grid step turns by more than pi/2 at n = " + std::to_string(grid));
        }
    }

    const double turns = pass.total / (2.0 * std::numbers::pi);
    WindingResult result;
    result.value = static_cast<int>(std::lround(turns));
    result.residual = std::abs(turns - result.value);
    result.samples = grid;
    if (result.residual >= 0.25) {
        throw UnresolvedError("total turning is not close to an integer multiple of 2 pi");
    }
    return result;
}

Complex kernel_integral(const KernelParams& params, int n) {
    if (!(params.beta > 0.0)) {
        throw std::invalid_argument("kernel_integral requires beta > 0");
    }
    if (n < 1) {
        throw std::invalid_argument("kernel_integral requires n >= 1");
    }
    const double mag = std::abs(params.alpha);
    if (std::abs(params.beta - mag) < 1e-6 * std::max(params.beta, mag)) {
        throw NearPoleError("beta is too close to |alpha|; the integrand has a pole on the contour");
    }
    Complex sum{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        sum += 1.0 / (params.beta + params.alpha * unit_phase(static_cast<double>(j) / n));
    }
    return sum / static_cast<double>(n);
}

std::pair<Complex, Complex> winding_decomposition_check(const TwoTermSpec& spec, int n) {
    if (spec.s() == 0.0) {
        throw OnCurveError("winding number undefined at s = 0: the curve passes through the origin");
    }
    if (n < 1) {
        throw std::invalid_argument("winding_decomposition_check requires n >= 1");
    }
    const double lo = 1.0 - spec.s();
    const double hi = 1.0 + spec.s();
    const int gap = spec.b() - spec.a();
    const double pole_tol = 1e-12 * (lo + hi);

    Complex first_sum{0.0, 0.0};
    Complex second_sum{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        const double t = static_cast<double>(j) / n;
        const Complex up = unit_phase(gap * t);
        const Complex down = std::conj(up);
        const Complex first_den = lo + hi * up;
        const Complex second_den = lo * down + hi;
        if (std::abs(first_den) <= pole_tol || std::abs(second_den) <= pole_tol) {
            throw OnCurveError("decomposition denominator vanishes on the grid at t = " + std::to_string(t));
        }
        first_sum += 1.0 / first_den;
        second_sum += 1.0 / second_den;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    return {spec.a() * lo * first_sum * inv_n, spec.b() * hi * second_sum * inv_n};
}

std::vector<Rational> zeros_of_curve(int a, int b) {
    if (a < 1 || b <= a) {
        throw std::invalid_argument("zeros_of_curve requires 1 <= a < b");
    }
    const std::int64_t denom = 2 * static_cast<std::int64_t>(b - a);
    std::vector<Rational> zeros;
    for (std::int64_t h = 1; h < denom; h += 2) {
        zeros.emplace_back(h, denom);
    }
    return zeros;
}

}  // namespace epicusp
