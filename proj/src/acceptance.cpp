#include "epicusp/acceptance.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "epicusp/errors.hpp"
#include "epicusp/geometry.hpp"
#include "epicusp/render.hpp"
#include "epicusp/singularity.hpp"
#include "epicusp/winding.hpp"

namespace epicusp {

namespace {

constexpr double kPi = std::numbers::pi;

// Collects failure messages; a criterion passes when none were recorded.
class Checker {
public:
    void expect(bool ok, const std::string& message) {
        ++checks_;
        if (!ok && failures_.size() < 10) {
            failures_.push_back(message);
        }
        failed_ += ok ? 0 : 1;
    }

    CriterionResult result(int id, std::string name) const {
        CriterionResult r;
        r.id = id;
        r.name = std::move(name);
        r.passed = failed_ == 0;
        std::ostringstream detail;
        detail << (checks_ - failed_) << "/" << checks_ << " checks";
        for (const auto& f : failures_) {
            detail << "; " << f;
        }
        r.detail = detail.str();
        return r;
    }

private:
    int checks_ = 0;
    int failed_ = 0;
    std::vector<std::string> failures_;
};

std::string str(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string tag(int a, int b, double s) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + str(s) + ")";
}

// Guards a criterion body so an unexpected exception is a failure, not an abort.
CriterionResult guarded(int id, const std::string& name, const std::function<void(Checker&)>& body) {
    Checker check;
    try {
        body(check);
    } catch (const std::exception& e) {
        check.expect(false, std::string("exception: ") + e.what());
    }
    return check.result(id, name);
}

void winding_theorem(Checker& check) {
    for (int a = 1; a <= 6; ++a) {
        for (int b = a + 1; b <= 6; ++b) {
            for (double s : {-1.0, -0.9, -0.5, -0.1, 0.1, 0.5, 0.9, 1.0}) {
                const TwoTermSpec spec(a, b, s);
                const int expected = s < 0 ? a : b;
                const int closed = winding_closed_form(spec);
                check.expect(closed == expected, "closed form " + tag(a, b, s));
                const WindingResult numeric = winding_numeric(spec.to_curve(), {}, 4096);
                check.expect(numeric.value == closed && numeric.residual < 1e-6,
                             "numeric " + tag(a, b, s) + " = " + std::to_string(numeric.value));
            }
        }
    }
    check.expect(winding_closed_form(TwoTermSpec(1, 3, -0.3)) == 1, "wind(gamma_{1,3}^{-0.3}, 0) = 1");
    check.expect(winding_closed_form(TwoTermSpec(1, 3, 0.3)) == 3, "wind(gamma_{1,3}^{0.3}, 0) = 3");
    check.expect(winding_numeric(TwoTermSpec(1, 3, -0.3)).value == 1, "numeric wind(gamma_{1,3}^{-0.3}, 0) = 1");
    check.expect(winding_numeric(TwoTermSpec(1, 3, 0.3)).value == 3, "numeric wind(gamma_{1,3}^{0.3}, 0) = 3");
}

// Portable uniform draw in [lo, hi) from the raw 64-bit engine output.
double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

void kernel_lemma(Checker& check) {
    std::mt19937_64 rng(20240611);
    int inside = 0;
    int outside = 0;
    while (inside + outside < 100) {
        const double alpha = uniform(rng, -2.0, 2.0);
        const double beta = uniform(rng, 1e-3, 2.0);
        const double mag = std::abs(alpha);
        if (beta > 1.01 * mag && inside < 50) {
            ++inside;
            const Complex v = kernel_integral({alpha, beta}, 2048);
            check.expect(std::abs(v - 1.0 / beta) < 1e-10,
                         "alpha=" + str(alpha) + " beta=" + str(beta) + " err=" + str(std::abs(v - 1.0 / beta)));
        } else if (beta < 0.99 * mag && outside < 50) {
            ++outside;
            const Complex v = kernel_integral({alpha, beta}, 2048);
            check.expect(std::abs(v) < 1e-10, "alpha=" + str(alpha) + " beta=" + str(beta) + " |v|=" + str(std::abs(v)));
        }
    }
}

void cusps_one_three(Checker& check) {
    const CuspSearch found = find_cusps(1, 3);
    check.expect(found.certificates.size() == 2, "expected 2 certificates, got " + std::to_string(found.certificates.size()));
    if (found.certificates.size() != 2) {
        return;
    }
    const double expected_t[2] = {0.25, 0.75};
    for (int i = 0; i < 2; ++i) {
        const CuspCertificate& c = found.certificates[static_cast<std::size_t>(i)];
        check.expect(std::abs(c.s + 0.5) < 1e-6 && std::abs(c.t - expected_t[i]) < 1e-6,
                     "certificate at (" + str(c.s) + ", " + str(c.t) + ")");
        check.expect(c.flip_dot <= -1.0 + 1e-6, "flip_dot " + str(c.flip_dot));
    }
    // One-sided tangents at t = 1/4: (0, -1) from below, (0, 1) from above.
    const CuspCertificate& first = found.certificates[0];
    check.expect(distance(first.tangent_left, {0.0, -1.0}) < 1e-4, "left tangent at 1/4");
    check.expect(distance(first.tangent_right, {0.0, 1.0}) < 1e-4, "right tangent at 1/4");
    const CuspCertificate& second = found.certificates[1];
    check.expect(std::abs(second.tangent_left.x) < 1e-4 && std::abs(std::abs(second.tangent_left.y) - 1.0) < 1e-4 &&
                     dot(second.tangent_left, second.tangent_right) <= -1.0 + 1e-6,
                 "tangents at 3/4");
}

void match_locus(Checker& check, int a, int b, bool expect_proven) {
    const CuspSearch found = find_cusps(a, b);
    const CuspLocus locus = predicted_cusp_locus(a, b);
    const std::string ab = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    check.expect(found.certificates.size() == locus.t_values.size(),
                 ab + " found " + std::to_string(found.certificates.size()) + " of " +
                     std::to_string(locus.t_values.size()));
    if (found.certificates.size() != locus.t_values.size()) {
        return;
    }
    for (std::size_t i = 0; i < locus.t_values.size(); ++i) {
        const CuspCertificate& c = found.certificates[i];
        check.expect(std::abs(c.s - locus.s_bar.to_double()) < 1e-6 &&
                         std::abs(c.t - locus.t_values[i].to_double()) < 1e-6,
                     ab + " certificate at (" + str(c.s) + ", " + str(c.t) + ")");
        check.expect(c.proven == expect_proven, ab + " proven flag");
        check.expect(c.flip_dot <= -1.0 + 1e-6, ab + " flip_dot");
    }
}

void loop_birth(Checker& check) {
    check.expect(loop_birth_count(1, 3, -0.495, 0.25, 0.03) == 3, "s=-0.495 should give 3 sign changes");
    check.expect(loop_birth_count(1, 3, -0.5, 0.25, 0.03) == 1, "s=-0.5 should give 1 sign change");
    check.expect(loop_birth_count(1, 3, -0.505, 0.25, 0.03) == 1, "s=-0.505 should give 1 sign change");
}

void symmetry_suite(Checker& check) {
    for (int a = 1; a <= 10; ++a) {
        for (int b = a + 1; b <= 10; ++b) {
            for (double s : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
                const SymmetryReport report = verify_symmetry(TwoTermSpec(a, b, s), 10000);
                if (std::gcd(a, b) == 1) {
                    check.expect(report.rotation_deviation < 1e-12 && report.reflection_deviation < 1e-12 &&
                                     report.coprime && report.verified(),
                                 "dihedral identities " + tag(a, b, s) + " rot=" + str(report.rotation_deviation) +
                                     " ref=" + str(report.reflection_deviation));
                } else {
                    check.expect(!report.coprime && !report.verified(), "non-coprime flag " + tag(a, b, s));
                }
            }
        }
    }
}

void intersection_grid(Checker& check) {
    for (int a = 1; a <= 20; ++a) {
        for (int b = a + 1; b * b - a * a <= 40; ++b) {
            if (std::gcd(a, b) != 1) {
                continue;
            }
            const std::string ab = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            check.expect(grid_intersection_check(a, b), ab + " grid_intersection_check");

            const int N = b * b - a * a;
            const IntersectionSearch found = self_intersections(TwoTermSpec(a, b, 0.0));
            std::set<std::pair<int, int>> numeric;
            bool on_grid = true;
            for (const auto& r : found.records) {
                const double j1 = std::nearbyint(r.t1 * N);
                const double j2 = std::nearbyint(r.t2 * N);
                on_grid = on_grid && std::abs(r.t1 - j1 / N) < 1e-9 && std::abs(r.t2 - j2 / N) < 1e-9;
                numeric.emplace(static_cast<int>(j1) % N, static_cast<int>(j2) % N);
            }
            const auto oracle = grid_coincidences(a, b);
            const std::set<std::pair<int, int>> expected(oracle.begin(), oracle.end());
            check.expect(on_grid && numeric == expected,
                         ab + " numeric " + std::to_string(numeric.size()) + " vs grid " +
                             std::to_string(expected.size()));
        }
    }
}

void zeros(Checker& check) {
    for (int a = 1; a <= 8; ++a) {
        for (int b = a + 1; b <= 8; ++b) {
            const auto ts = zeros_of_curve(a, b);
            check.expect(static_cast<int>(ts.size()) == b - a, "count for " + tag(a, b, 0.0));
            const CurveSpec curve = TwoTermSpec(a, b, 0.0).to_curve();
            for (const Rational& t : ts) {
                const double v = t.to_double();
                check.expect(v >= 0.0 && v < 1.0 && evaluate(curve, v).norm() < 1e-12,
                             "|gamma(" + t.to_string() + ")| for " + tag(a, b, 0.0));
            }
        }
    }
}

void closed_forms(Checker& check) {
    for (int k = 0; k <= 4000; ++k) {
        const double t = k / 4000.0;
        const double to_pole = std::abs(4.0 * t - std::nearbyint(4.0 * t)) / 4.0;
        if (to_pole < 1e-3) {
            continue;
        }
        const auto rotated = rotated_param_deriv(1, 3, t);
        const double expected = -1.0 / std::tan(4.0 * kPi * t);
        check.expect(rotated && std::abs(*rotated - expected) < 1e-9, "rotated derivative at t=" + str(t));
    }
    for (double s : {-1.0, -0.99, -0.75, -0.6, -0.51}) {
        check.expect(undefined_derivative_set(1, 3, s).size() == 2, "2 roots at s=" + str(s));
    }
    check.expect(undefined_derivative_set(1, 3, -0.5).size() == 4, "4 roots at s=-0.5");
    for (double s : {-0.49, -0.3, 0.0, 0.5, 0.99, 1.0}) {
        check.expect(undefined_derivative_set(1, 3, s).size() == 6, "6 roots at s=" + str(s));
    }
}

std::size_t count_of(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

void rendering(Checker& check) {
    const std::string sweep1 = render_sweep(1, 3, 21);
    const std::string sweep2 = render_sweep(1, 3, 21);
    check.expect(sweep1 == sweep2, "render_curve output differs between runs");
    check.expect(count_of(sweep1, "<polyline class=\"curve\"") == 21, "sweep panel has 21 curves");

    const std::string diagram1 = render_singularity_diagram(1, 3, 400);
    const std::string diagram2 = render_singularity_diagram(1, 3, 400);
    check.expect(diagram1 == diagram2, "render_singularity_diagram output differs between runs");
    check.expect(count_of(diagram1, "class=\"cusp-marker\"") == 2, "diagram has exactly two cusp markers");
    check.expect(count_of(diagram1, "class=\"cusp-marker\" data-s=\"-0.5\" data-t=\"0.25\"") == 1,
                 "cusp marker at (-0.5, 0.25)");
    check.expect(count_of(diagram1, "class=\"cusp-marker\" data-s=\"-0.5\" data-t=\"0.75\"") == 1,
                 "cusp marker at (-0.5, 0.75)");
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
    std::vector<CriterionResult> results;
    results.push_back(guarded(1, "winding numbers: closed form = argument tracking (a for s<0, b for s>0)", winding_theorem));
    results.push_back(guarded(2, "kernel integral dichotomy 1/beta vs 0 (100 seeded pairs, n=2048)", kernel_lemma));
    results.push_back(guarded(3, "cusps of (1,3): exactly (-0.5,0.25) and (-0.5,0.75) with tangent flip", cusps_one_three));
    results.push_back(guarded(4, "cusps of (1,b), b=2..8: b-1 certificates on the predicted locus", [](Checker& c) {
        for (int b = 2; b <= 8; ++b) {
            match_locus(c, 1, b, true);
        }
    }));
    results.push_back(guarded(5, "cusps for a>1: (2,3), (2,5), (3,5) on the locus, proven=false", [](Checker& c) {
        match_locus(c, 2, 3, false);
        match_locus(c, 2, 5, false);
        match_locus(c, 3, 5, false);
    }));
    results.push_back(guarded(6, "loop birth near t=1/4: 3 sign changes at s=-0.495, 1 at s=-0.5 and -0.505", loop_birth));
    results.push_back(guarded(7, "dihedral identities to 1e-12 over 1e4 samples; non-coprime flagged", symmetry_suite));
    results.push_back(guarded(8, "s=0 self-intersections lie exactly on the j/(b^2-a^2) grid", intersection_grid));
    results.push_back(guarded(9, "zeros of gamma_{a,b}^0 at h/(2(b-a)), b-a of them", zeros));
    results.push_back(guarded(10, "rotated derivative = -cot(4 pi t); undefined set sizes 2/4/6", closed_forms));
    results.push_back(guarded(11, "deterministic SVG output; diagram carries two cusp markers", rendering));
    return results;
}

}  // namespace epicusp
