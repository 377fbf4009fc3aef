#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "epicusp/errors.hpp"
#include "epicusp/parallel.hpp"
#include "epicusp/singularity.hpp"

using namespace epicusp;

namespace {

constexpr double kPi = std::numbers::pi;

// Wrapped distance on the circle [0, 1).
double circular_gap(double u, double v) {
    const double d = std::abs(u - v);
    return std::min(d, 1.0 - d);
}

// Oracle for find_cusps: the predicted locus, kept only where the tangent
// flip certifies at the exact rational point.
std::vector<std::pair<double, double>> certified_locus(int a, int b) {
    const CuspLocus locus = predicted_cusp_locus(a, b);
    std::vector<std::pair<double, double>> out;
    for (const auto& t : locus.t_values) {
        if (certify_cusp(TwoTermSpec(a, b, locus.s_bar.to_double()), t.to_double())) {
            out.emplace_back(locus.s_bar.to_double(), t.to_double());
        }
    }
    return out;
}

void check_against_oracle(int a, int b) {
    const auto expected = certified_locus(a, b);
    const CuspSearch found = find_cusps(a, b);
    REQUIRE(found.certificates.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(std::abs(found.certificates[i].s - expected[i].first) < 1e-6);
        CHECK(circular_gap(found.certificates[i].t, expected[i].second) < 1e-6);
    }
}

}  // namespace

TEST_CASE("classify_point") {
    CHECK(classify_point(TwoTermSpec(1, 3, -1.0), 0.0) == PointKind::VerticalTangent);
    CHECK(classify_point(TwoTermSpec(1, 3, -1.0), 0.5) == PointKind::VerticalTangent);
    CHECK(classify_point(TwoTermSpec(1, 3, -0.5), 0.25) == PointKind::Singular);
    CHECK(classify_point(TwoTermSpec(1, 3, 0.3), 0.1) == PointKind::Regular);
    CHECK(classify_point(TwoTermSpec(1, 3, -1.0), 0.25) == PointKind::HorizontalTangent);
    CHECK(to_string(PointKind::Singular) == "Singular");
    CHECK(derivative(TwoTermSpec(1, 3, 0.3), 0.1, 1).norm() > 1.0);
}

TEST_CASE("tangent flip certification") {
    const auto c = certify_cusp(TwoTermSpec(1, 3, -0.5), 0.25);
    REQUIRE(c.has_value());
    CHECK(std::abs(c->tangent_left.x) < 1e-9);
    CHECK(c->tangent_left.y == doctest::Approx(-1.0));
    CHECK(std::abs(c->tangent_right.x) < 1e-9);
    CHECK(c->tangent_right.y == doctest::Approx(1.0));
    CHECK(c->flip_dot == doctest::Approx(-1.0));
    CHECK(c->proven);

    const auto mirror = certify_cusp(TwoTermSpec(1, 3, -0.5), 0.75);
    REQUIRE(mirror.has_value());
    CHECK(mirror->flip_dot <= kFlipAcceptance);

    CHECK_THROWS_AS(certify_cusp(TwoTermSpec(1, 3, 0.3), 0.25), NotSingularError);
    CHECK_THROWS_AS(certify_cusp(TwoTermSpec(1, 3, -0.5), 0.25, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(certify_cusp(TwoTermSpec(1, 3, -0.5), 0.25, 2e-3), std::invalid_argument);

    // gamma' proportional to (z - 1)^2 z with z = exp(2 pi i t): a double zero
    // at t = 0 where the tangent keeps its direction.
    const CurveSpec flat({{1, Complex{1.0, 0.0}}, {2, Complex{-1.0, 0.0}}, {3, Complex{1.0 / 3.0, 0.0}}});
    REQUIRE(classify_point(flat, 0.0) == PointKind::Singular);
    CHECK_FALSE(certify_tangent_flip(flat, 0.0).has_value());
}

TEST_CASE("predicted cusp locus") {
    const CuspLocus l13 = predicted_cusp_locus(1, 3);
    CHECK(l13.s_bar == Rational(-1, 2));
    REQUIRE(l13.t_values.size() == 2);
    CHECK(l13.t_values[0] == Rational(1, 4));
    CHECK(l13.t_values[1] == Rational(3, 4));
    CHECK(l13.proven);

    const CuspLocus l12 = predicted_cusp_locus(1, 2);
    CHECK(l12.s_bar == Rational(-1, 3));
    REQUIRE(l12.t_values.size() == 1);
    CHECK(l12.t_values[0] == Rational(1, 2));

    const CuspLocus l25 = predicted_cusp_locus(2, 5);
    CHECK(l25.s_bar == Rational(-3, 7));
    REQUIRE(l25.t_values.size() == 3);
    CHECK(l25.t_values[0] == Rational(1, 6));
    CHECK(l25.t_values[1] == Rational(1, 2));
    CHECK(l25.t_values[2] == Rational(5, 6));
    CHECK_FALSE(l25.proven);
}

TEST_CASE("find_cusps examples") {
    const CuspSearch s13 = find_cusps(1, 3);
    REQUIRE(s13.certificates.size() == 2);
    CHECK(std::abs(s13.certificates[0].s + 0.5) < 1e-6);
    CHECK(std::abs(s13.certificates[0].t - 0.25) < 1e-6);
    CHECK(std::abs(s13.certificates[1].s + 0.5) < 1e-6);
    CHECK(std::abs(s13.certificates[1].t - 0.75) < 1e-6);

    const CuspSearch s15 = find_cusps(1, 5);
    REQUIRE(s15.certificates.size() == 4);
    const double ts[] = {0.125, 0.375, 0.625, 0.875};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(s15.certificates[i].s + 2.0 / 3.0) < 1e-6);
        CHECK(std::abs(s15.certificates[i].t - ts[i]) < 1e-6);
    }

    check_against_oracle(2, 5);
    check_against_oracle(3, 7);
    CHECK_THROWS_AS(find_cusps(1, 3, 32, 256), std::invalid_argument);
}

TEST_CASE("find_cusps over a = 1") {
    for (int b = 2; b <= 9; ++b) {
        CAPTURE(b);
        const CuspSearch found = find_cusps(1, b);
        const CuspLocus locus = predicted_cusp_locus(1, b);
        REQUIRE(static_cast<int>(found.certificates.size()) == b - 1);
        for (std::size_t i = 0; i < found.certificates.size(); ++i) {
            const CuspCertificate& c = found.certificates[i];
            CHECK(std::abs(c.s - locus.s_bar.to_double()) < 1e-6);
            CHECK(circular_gap(c.t, locus.t_values[i].to_double()) < 1e-6);
            CHECK(c.flip_dot <= kFlipAcceptance);
            CHECK(std::abs(c.tangent_left.norm() - 1.0) < 1e-9);
            CHECK(std::abs(c.tangent_right.norm() - 1.0) < 1e-9);
            CHECK(c.proven);
        }
        // The set is invariant under t -> t + 1/(b - 1).
        for (const auto& c : found.certificates) {
            const double shifted = std::fmod(c.t + 1.0 / (b - 1), 1.0);
            const bool hit = std::any_of(found.certificates.begin(), found.certificates.end(),
                                         [&](const CuspCertificate& o) { return circular_gap(o.t, shifted) < 1e-9; });
            CHECK(hit);
        }
    }
}

TEST_CASE("find_cusps does not depend on the worker count") {
    const CuspSearch threaded = find_cusps(2, 7);
    ::setenv("EPICUSP_THREADS", "1", 1);
    REQUIRE(worker_count() == 1);
    const CuspSearch serial = find_cusps(2, 7);
    ::unsetenv("EPICUSP_THREADS");
    REQUIRE(threaded.certificates.size() == serial.certificates.size());
    for (std::size_t i = 0; i < serial.certificates.size(); ++i) {
        CHECK(threaded.certificates[i].s == serial.certificates[i].s);
        CHECK(threaded.certificates[i].t == serial.certificates[i].t);
    }
    CHECK(threaded.candidates == serial.candidates);
}

TEST_CASE("rotation angle and rotated derivative") {
    CHECK(rotation_angle(1, 9) == doctest::Approx(kPi / 2.0 - kPi / 8.0));
    CHECK(rotation_angle(1, 3) == 0.0);
    CHECK(rotation_angle(1, 5) == doctest::Approx(kPi / 4.0));

    CHECK_FALSE(rotated_param_deriv(1, 3, 0.25).has_value());
    CHECK_FALSE(rotated_param_deriv(1, 5, 0.125).has_value());
    const auto zero = rotated_param_deriv(1, 3, 0.125);
    REQUIRE(zero.has_value());
    CHECK(std::abs(*zero) < 1e-12);

    for (int k = 1; k < 2000; ++k) {
        const double t = k / 2000.0;
        if (std::abs(std::sin(4.0 * kPi * t)) < 1e-3) {
            continue;
        }
        const auto v = rotated_param_deriv(1, 3, t);
        REQUIRE(v.has_value());
        CHECK(std::abs(*v + 1.0 / std::tan(4.0 * kPi * t)) < 1e-9);
    }

    // The closed form against the slope of the actually rotated curve.
    for (auto [a, b] : {std::pair{1, 4}, std::pair{2, 5}, std::pair{1, 9}, std::pair{3, 4}}) {
        const double s_bar = static_cast<double>(a - b) / (a + b);
        const CurveSpec turned = rotate(TwoTermSpec(a, b, s_bar), rotation_angle(a, b));
        for (int k = 0; k < 97; ++k) {
            const double t = (k + 0.37) / 97.0;
            const auto closed = rotated_param_deriv(a, b, t);
            const auto direct = parametric_derivative(turned, t);
            if (!closed || !direct || std::abs(*closed) > 1e3) {
                continue;
            }
            CHECK(std::abs(*closed - *direct) < 1e-7 * (1.0 + std::abs(*closed)));
        }
    }
}

TEST_CASE("loop birth") {
    CHECK(loop_birth_count(1, 3, -0.495, 0.25, 0.03) == 3);
    CHECK(loop_birth_count(1, 3, -0.5, 0.25, 0.03) == 1);
    CHECK(loop_birth_count(1, 3, -0.505, 0.25, 0.03) == 1);
    CHECK_THROWS_AS(loop_birth_count(1, 3, -0.5, 0.25, 0.6), WindowTooWideError);

    for (int b = 2; b <= 6; ++b) {
        CAPTURE(b);
        const double s_bar = (1.0 - b) / (1.0 + b);
        const double t_center = 1.0 / (2.0 * (b - 1));
        const int below = loop_birth_count(1, b, s_bar - 0.01, t_center);
        const int at = loop_birth_count(1, b, s_bar, t_center);
        const int above = loop_birth_count(1, b, s_bar + 0.01, t_center);
        CHECK(below == 1);
        CHECK(at == 1);
        CHECK(above == 3);
    }
}

TEST_CASE("undefined derivative set") {
    auto near = [](const std::vector<double>& got, std::vector<double> want) {
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) {
            CHECK(std::abs(got[i] - want[i]) < 1e-9);
        }
    };
    near(undefined_derivative_set(1, 3, -0.75), {0.0, 0.5});
    near(undefined_derivative_set(1, 3, -0.5), {0.0, 0.25, 0.5, 0.75});
    near(undefined_derivative_set(1, 3, 1.0), {0.0, 1.0 / 6, 2.0 / 6, 3.0 / 6, 4.0 / 6, 5.0 / 6});

    for (double s : {-0.99, -0.8, -0.6, -0.51}) {
        CHECK(undefined_derivative_set(1, 3, s).size() == 2);
    }
    for (double s : {-0.49, -0.2, 0.0, 0.4, 0.9}) {
        CHECK(undefined_derivative_set(1, 3, s).size() == 6);
    }

    // The numerical root finder reproduces the closed form.
    for (double s : {-0.75, -0.3, 0.5, 1.0}) {
        const auto closed = undefined_derivative_set(1, 3, s);
        const auto numeric = undefined_derivative_set_numeric(TwoTermSpec(1, 3, s));
        REQUIRE(closed.size() == numeric.size());
        for (std::size_t i = 0; i < closed.size(); ++i) {
            CHECK(std::abs(closed[i] - numeric[i]) < 1e-8);
        }
    }

    // Fallback for other pairs: every root really zeroes x'.
    const TwoTermSpec other(2, 5, 0.3);
    const auto roots = undefined_derivative_set(2, 5, 0.3);
    CHECK_FALSE(roots.empty());
    for (double t : roots) {
        CHECK(std::abs(derivative(other, t, 1).x) <= 1e-6 * other.to_curve().derivative_scale());
    }
}
