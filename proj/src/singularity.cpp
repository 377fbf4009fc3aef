#include "epicusp/singularity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "epicusp/errors.hpp"
#include "epicusp/parallel.hpp"

namespace epicusp {

namespace {

constexpr double kPi = std::numbers::pi;

void require_pair(int a, int b) {
    if (a < 1 || b <= a) {
        throw std::invalid_argument("requires 1 <= a < b, got a=" + std::to_string(a) + " b=" + std::to_string(b));
    }
}

PlanePoint unit(PlanePoint p) noexcept {
    const double n = p.norm();
    return n > 0.0 ? (1.0 / n) * p : p;
}

// Distance between parameters on the circle R / Z.
double circular_gap(double t1, double t2) noexcept {
    const double d = reduce_period(t1 - t2);
    return std::min(d, 1.0 - d);
}

}  // namespace

std::string_view to_string(PointKind kind) noexcept {
    switch (kind) {
        case PointKind::Regular: return "Regular";
        case PointKind::VerticalTangent: return "VerticalTangent";
        case PointKind::HorizontalTangent: return "HorizontalTangent";
        case PointKind::Singular: return "Singular";
    }
    return "Regular";
}

double singular_tolerance(const CurveSpec& spec) noexcept { return 1e-7 * spec.derivative_scale(); }

PointKind classify_point(const CurveSpec& spec, double t) {
    const PlanePoint d = derivative(spec, t, 1);
    const double tol = singular_tolerance(spec);
    const bool flat_x = std::abs(d.x) <= tol;
    const bool flat_y = std::abs(d.y) <= tol;
    if (flat_x && flat_y) {
        return PointKind::Singular;
    }
    if (flat_x) {
        return PointKind::VerticalTangent;
    }
    if (flat_y) {
        return PointKind::HorizontalTangent;
    }
    return PointKind::Regular;
}

std::optional<TangentFlip> certify_tangent_flip(const CurveSpec& spec, double t, double delta) {
    if (!(delta > 0.0 && delta <= 1e-3)) {
        throw std::invalid_argument("certify_cusp requires 0 < delta <= 1e-3");
    }
    if (classify_point(spec, t) != PointKind::Singular) {
        throw NotSingularError("gamma'(t) does not vanish at t = " + std::to_string(t));
    }

    constexpr int kLevels = 4;
    std::array<PlanePoint, kLevels> left{};
    std::array<PlanePoint, kLevels> right{};
    double step = delta;
    for (int k = 0; k < kLevels; ++k, step /= 4.0) {
        left[k] = unit(derivative(spec, t - step, 1));
        right[k] = unit(derivative(spec, t + step, 1));
    }

    // Unit tangents are smooth in the offset, so (4 T(d/4) - T(d)) / 3 cancels
    // the linear term.
    TangentFlip flip;
    bool accepted = true;
    for (int k = 1; k < kLevels; ++k) {
        const PlanePoint l = unit((4.0 / 3.0) * left[k] - (1.0 / 3.0) * left[k - 1]);
        const PlanePoint r = unit((4.0 / 3.0) * right[k] - (1.0 / 3.0) * right[k - 1]);
        const double d = dot(l, r);
        accepted = accepted && d <= kFlipAcceptance;
        flip = {l, r, d};
    }
    if (!accepted) {
        return std::nullopt;
    }
    return flip;
}

std::optional<CuspCertificate> certify_cusp(const TwoTermSpec& spec, double t, double delta) {
    auto flip = certify_tangent_flip(spec.to_curve(), t, delta);
    if (!flip) {
        return std::nullopt;
    }
    CuspCertificate cert;
    cert.s = spec.s();
    cert.t = reduce_period(t);
    cert.tangent_left = flip->tangent_left;
    cert.tangent_right = flip->tangent_right;
    cert.flip_dot = flip->flip_dot;
    cert.proven = spec.a() == 1;
    return cert;
}

CuspLocus predicted_cusp_locus(int a, int b) {
    require_pair(a, b);
    CuspLocus locus;
    locus.s_bar = Rational(a - b, a + b);
    const std::int64_t denom = 2 * static_cast<std::int64_t>(b - a);
    for (std::int64_t h = 1; h < denom; h += 2) {
        locus.t_values.emplace_back(h, denom);
    }
    locus.proven = a == 1;
    return locus;
}

namespace {

struct Seed {
    double s;
    double t;
};

// gamma' of the two-term curve and its partials in s and t.
struct TwoTermJet {
    Complex value;
    Complex d_s;
    Complex d_t;
};

TwoTermJet two_term_jet(int a, int b, double s, double t) {
    const double tr = reduce_period(t);
    const Complex ea = unit_phase(reduce_period(a * tr));
    const Complex eb = unit_phase(reduce_period(b * tr));
    const Complex i2pi{0.0, kTwoPi};
    TwoTermJet jet;
    jet.value = i2pi * (a * (1.0 - s) * ea + b * (1.0 + s) * eb);
    jet.d_s = i2pi * (-static_cast<double>(a) * ea + static_cast<double>(b) * eb);
    jet.d_t = i2pi * i2pi * (a * a * (1.0 - s) * ea + static_cast<double>(b) * b * (1.0 + s) * eb);
    return jet;
}

std::optional<Seed> refine_singular(int a, int b, Seed seed) {
    constexpr int kMaxIterations = 50;
    constexpr double kDamping = 0.5;
    const double tol = 1e-13 * kTwoPi * 2.0 * b;

    double s = seed.s;
    double t = seed.t;
    double residual = std::abs(two_term_jet(a, b, s, t).value);
    for (int iter = 0; iter < kMaxIterations && residual > tol; ++iter) {
        const TwoTermJet jet = two_term_jet(a, b, s, t);
        // Solve [d_s d_t] (ds, dt)^T = -value as a real 2x2 system.
        const double j11 = jet.d_s.real(), j12 = jet.d_t.real();
        const double j21 = jet.d_s.imag(), j22 = jet.d_t.imag();
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-300) {
            return std::nullopt;
        }
        const double fx = -jet.value.real();
        const double fy = -jet.value.imag();
        const double ds = (fx * j22 - j12 * fy) / det;
        const double dt = (j11 * fy - fx * j21) / det;

        // Backtrack by halving until the residual drops.
        double scale = 1.0;
        bool improved = false;
        for (int k = 0; k < 40; ++k, scale *= kDamping) {
            const double s_try = std::clamp(s + scale * ds, -1.0, 1.0);
            const double t_try = t + scale * dt;
            const double r_try = std::abs(two_term_jet(a, b, s_try, t_try).value);
            if (r_try < residual) {
                s = s_try;
                t = t_try;
                residual = r_try;
                improved = true;
                break;
            }
        }
        if (!improved) {
            break;
        }
    }
    if (residual > tol * 1e3) {
        return std::nullopt;
    }
    return Seed{s, reduce_period(t)};
}

}  // namespace

CuspSearch find_cusps(int a, int b, int s_grid, int t_grid) {
    require_pair(a, b);
    if (s_grid < 64 || t_grid < 64) {
        throw std::invalid_argument("find_cusps requires grids >= 64");
    }
    constexpr double kEdge = 1e-3;
    constexpr double kDedupRadius = 1e-4;
    const double s_lo = -1.0 + kEdge;
    const double s_step = (2.0 - 2.0 * kEdge) / (s_grid - 1);

    const auto rows = static_cast<std::size_t>(s_grid);
    const auto cols = static_cast<std::size_t>(t_grid);
    std::vector<double> speed2(rows * cols);
    parallel_for(rows, [&](std::size_t j) {
        const double s = s_lo + static_cast<double>(j) * s_step;
        for (std::size_t k = 0; k < cols; ++k) {
            const double t = static_cast<double>(k) / t_grid;
            speed2[j * cols + k] = std::norm(two_term_jet(a, b, s, t).value);
        }
    });

    std::vector<Seed> seeds;
    for (std::size_t j = 0; j < rows; ++j) {
        for (std::size_t k = 0; k < cols; ++k) {
            const double here = speed2[j * cols + k];
            bool is_min = true;
            for (int dj = -1; dj <= 1 && is_min; ++dj) {
                const auto jj = static_cast<std::ptrdiff_t>(j) + dj;
                if (jj < 0 || jj >= static_cast<std::ptrdiff_t>(rows)) {
                    continue;
                }
                for (int dk = -1; dk <= 1; ++dk) {
                    if (dj == 0 && dk == 0) {
                        continue;
                    }
                    const auto kk = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k + cols) + dk) % cols;
                    if (speed2[static_cast<std::size_t>(jj) * cols + kk] < here) {
                        is_min = false;
                        break;
                    }
                }
            }
            if (is_min) {
                seeds.push_back({s_lo + static_cast<double>(j) * s_step, static_cast<double>(k) / t_grid});
            }
        }
    }

    CuspSearch search;
    search.candidates = static_cast<int>(seeds.size());
    std::vector<std::optional<Seed>> refined(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) { refined[i] = refine_singular(a, b, seeds[i]); });

    std::vector<Seed> unique;
    for (const auto& r : refined) {
        if (!r) {
            ++search.unconverged;
            continue;
        }
        const bool seen = std::any_of(unique.begin(), unique.end(), [&](const Seed& u) {
            return std::abs(u.s - r->s) < kDedupRadius && circular_gap(u.t, r->t) < kDedupRadius;
        });
        if (!seen) {
            unique.push_back(*r);
        }
    }

    for (const auto& u : unique) {
        const TwoTermSpec spec(a, b, u.s);
        try {
            if (auto cert = certify_cusp(spec, u.t)) {
                search.certificates.push_back(*cert);
            } else {
                ++search.rejected;
            }
        } catch (const NotSingularError&) {
            ++search.rejected;
        }
    }
    std::sort(search.certificates.begin(), search.certificates.end(),
              [](const CuspCertificate& x, const CuspCertificate& y) { return x.t < y.t; });
    return search;
}

double rotation_angle(int a, int b) {
    if (b - a < 1) {
        throw std::invalid_argument("rotation_angle requires b - a >= 1");
    }
    return kPi * (0.5 - 1.0 / (b - a));
}

std::optional<double> rotated_param_deriv(int a, int b, double t) {
    require_pair(a, b);
    const double x = 1.0 / (b - a) - static_cast<double>(a + b) * t;
    // tan(pi x) has poles at x = 1/2 + n.
    const double offset = x - 0.5;
    if (std::abs(offset - std::nearbyint(offset)) <= 1e-12) {
        return std::nullopt;
    }
    return -std::tan(kPi * x);
}

double default_loop_half_width(int a, int b) {
    require_pair(a, b);
    return 1.0 / (4.0 * (b - a));
}

int loop_birth_count(int a, int b, double s, double t_center, double half_width) {
    const TwoTermSpec spec(a, b, s);
    if (!(half_width > 0.0)) {
        throw std::invalid_argument("loop_birth_count requires half_width > 0");
    }
    const double lo = t_center - half_width;
    const double hi = t_center + half_width;
    int inside = 0;
    for (const Rational& tc : predicted_cusp_locus(a, b).t_values) {
        const double base = tc.to_double();
        for (double shift = std::floor(lo) - 1.0; shift <= std::ceil(hi) + 1.0; shift += 1.0) {
            const double candidate = base + shift;
            if (candidate >= lo && candidate <= hi) {
                ++inside;
            }
        }
    }
    if (inside > 1) {
        throw WindowTooWideError("window around t = " + std::to_string(t_center) + " contains " +
                                 std::to_string(inside) + " predicted cusp parameters");
    }

    // For s < 0 the curve at a predicted cusp parameter points along exp(2 pi i a t).
    const double phi = kPi / 2.0 - kTwoPi * reduce_period(a * reduce_period(t_center));
    const CurveSpec turned = rotate(spec.to_curve(), phi);
    const double floor_tol = 1e-13 * turned.scale();

    constexpr int kPoints = 1001;
    int changes = 0;
    int last_sign = 0;
    for (int k = 0; k < kPoints; ++k) {
        const double t = lo + (hi - lo) * k / (kPoints - 1);
        const double x = evaluate(turned, t).x;
        if (std::abs(x) <= floor_tol) {
            continue;
        }
        const int sign = x > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) {
            ++changes;
        }
        last_sign = sign;
    }
    return changes;
}

int loop_birth_count(int a, int b, double s, double t_center) {
    return loop_birth_count(a, b, s, t_center, default_loop_half_width(a, b));
}

namespace {

void push_unique(std::vector<double>& roots, double t) {
    t = reduce_period(t);
    constexpr double kMerge = 1e-9;
    const bool seen = std::any_of(roots.begin(), roots.end(),
                                  [&](double r) { return circular_gap(r, t) < kMerge; });
    if (!seen) {
        roots.push_back(t);
    }
}

std::vector<double> undefined_set_one_three(double s) {
    std::vector<double> roots{0.0, 0.5};
    if (s > -1.0) {
        const double c = (-2.0 - s) / (3.0 * (1.0 + s));
        if (c >= -1.0 && c <= 1.0) {
            const double tbar = std::acos(c) / (4.0 * kPi);
            for (double t : {tbar, 0.5 - tbar, 0.5 + tbar, 1.0 - tbar}) {
                push_unique(roots, t);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace

std::vector<double> undefined_derivative_set_numeric(const CurveSpec& spec) {
    int max_freq = 1;
    for (const auto& term : spec.terms()) {
        max_freq = std::max(max_freq, std::abs(term.frequency));
    }
    const int n = std::max(2048, 64 * max_freq);
    const double zero_tol = 1e-13 * spec.derivative_scale();
    const double accept_tol = vertical_tolerance(spec);
    auto xprime = [&](double t) { return derivative(spec, t, 1).x; };

    std::vector<double> values(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        values[static_cast<std::size_t>(k)] = xprime(static_cast<double>(k) / n);
    }
    auto at = [&](int k) { return values[static_cast<std::size_t>((k % n + n) % n)]; };

    std::vector<double> roots;
    for (int k = 0; k < n; ++k) {
        const double t0 = static_cast<double>(k) / n;
        const double t1 = static_cast<double>(k + 1) / n;
        const double v0 = at(k);
        const double v1 = at(k + 1);
        if (std::abs(v0) <= zero_tol) {
            push_unique(roots, t0);
            continue;
        }
        if (std::abs(v1) > zero_tol && (v0 < 0.0) != (v1 < 0.0)) {
            double lo = t0, hi = t1, flo = v0;
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = xprime(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            push_unique(roots, 0.5 * (lo + hi));
            continue;
        }
        // A touching root: |x'| dips to zero without changing sign.
        const double vm = at(k - 1);
        if (std::abs(v0) < std::abs(vm) && std::abs(v0) <= std::abs(v1) && (vm < 0.0) == (v0 < 0.0) &&
            (v1 < 0.0) == (v0 < 0.0)) {
            double lo = static_cast<double>(k - 1) / n;
            double hi = t1;
            const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
            double c = hi - golden * (hi - lo);
            double d = lo + golden * (hi - lo);
            double fc = std::abs(xprime(c));
            double fd = std::abs(xprime(d));
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                if (fc < fd) {
                    hi = d;
                    d = c;
                    fd = fc;
                    c = hi - golden * (hi - lo);
                    fc = std::abs(xprime(c));
                } else {
                    lo = c;
                    c = d;
                    fc = fd;
                    d = lo + golden * (hi - lo);
                    fd = std::abs(xprime(d));
                }
            }
            const double t = 0.5 * (lo + hi);
            if (std::abs(xprime(t)) <= accept_tol) {
                push_unique(roots, t);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<double> undefined_derivative_set(int a, int b, double s) {
    const TwoTermSpec spec(a, b, s);
    if (a == 1 && b == 3) {
        return undefined_set_one_three(s);
    }
    return undefined_derivative_set_numeric(spec.to_curve());
}

}  // namespace epicusp
