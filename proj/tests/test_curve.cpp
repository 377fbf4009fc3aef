#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "epicusp/curve.hpp"
#include "epicusp/curve_json.hpp"

using namespace epicusp;

namespace {

constexpr double kPi = std::numbers::pi;

// Central difference of evaluate; independent of the analytic derivative.
PlanePoint finite_difference(const CurveSpec& spec, double t, double h = 1e-6) {
    const PlanePoint plus = evaluate(spec, t + h);
    const PlanePoint minus = evaluate(spec, t - h);
    return (1.0 / (2.0 * h)) * (plus - minus);
}

CurveSpec random_spec(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_int_distribution<int> freq(-10, 10);
    std::uniform_real_distribution<double> mag(0.0, 2.0);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::vector<ExponentialTerm> terms;
    const int m = count(rng);
    for (int i = 0; i < m; ++i) {
        terms.push_back({freq(rng), std::polar(mag(rng), angle(rng))});
    }
    return CurveSpec(terms);
}

CurveSpec single(int f, double w) { return CurveSpec({{f, Complex{w, 0.0}}}); }

}  // namespace

TEST_CASE("evaluate: fixed points of the two-term family") {
    const PlanePoint at0 = evaluate(TwoTermSpec(1, 3, 0.0), 0.0);
    CHECK(at0.x == doctest::Approx(2.0));
    CHECK(at0.y == doctest::Approx(0.0));

    // The curve passes through the origin at t = 1/4.
    const PlanePoint zero = evaluate(TwoTermSpec(1, 3, 0.0), 0.25);
    CHECK(zero.norm() < 1e-15);

    const PlanePoint half = evaluate(TwoTermSpec(1, 3, -1.0), 0.5);
    CHECK(half.x == doctest::Approx(-2.0));
    CHECK(std::abs(half.y) < 1e-15);
}

TEST_CASE("two-term lowering and validation") {
    const CurveSpec lowered = TwoTermSpec(2, 5, 0.25).to_curve();
    REQUIRE(lowered.terms().size() == 2);
    CHECK(lowered.terms()[0] == ExponentialTerm{2, Complex{0.75, 0.0}});
    CHECK(lowered.terms()[1] == ExponentialTerm{5, Complex{1.25, 0.0}});
    CHECK(lowered.scale() == doctest::Approx(2.0));

    CHECK_THROWS_AS(TwoTermSpec(3, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TwoTermSpec(0, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TwoTermSpec(1, 3, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(TwoTermSpec(1, 3, std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(CurveSpec({}), std::invalid_argument);
    const int bad[] = {3, 0, 7};
    CHECK_THROWS_AS(CurveSpec::from_frequencies(bad), std::invalid_argument);
    const int fig1[] = {3, 3, 7};
    CHECK(CurveSpec::from_frequencies(fig1).scale() == doctest::Approx(3.0));
}

TEST_CASE("derivative") {
    SUBCASE("vanishes at the cusp of (1,3,-1/2)") {
        CHECK(derivative(TwoTermSpec(1, 3, -0.5), 0.25, 1).norm() < 1e-12);
    }
    SUBCASE("unit circle at t=0") {
        const PlanePoint d = derivative(single(1, 1.0), 0.0, 1);
        CHECK(std::abs(d.x) < 1e-15);
        CHECK(d.y == doctest::Approx(2.0 * kPi));
    }
    SUBCASE("(1,3,0) at t=0 against central differences") {
        const CurveSpec spec = TwoTermSpec(1, 3, 0.0);
        const PlanePoint fd = finite_difference(spec, 0.0);
        CHECK(std::abs(fd.x) < 1e-4);
        CHECK(std::abs(fd.y - 8.0 * kPi) < 1e-4);
        const PlanePoint d = derivative(spec, 0.0, 1);
        CHECK(distance(d, fd) < 1e-4);
        CHECK(d.y == doctest::Approx(8.0 * kPi));
    }
    SUBCASE("second order matches differences of the first") {
        const CurveSpec spec = TwoTermSpec(2, 7, 0.3);
        for (double t : {0.0, 0.13, 0.5, 0.91}) {
            const double h = 1e-6;
            const PlanePoint fd = (1.0 / (2.0 * h)) * (derivative(spec, t + h, 1) - derivative(spec, t - h, 1));
            CHECK(distance(derivative(spec, t, 2), fd) < 1e-3);
        }
    }
    CHECK_THROWS_AS(derivative(single(1, 1.0), 0.0, 0), std::invalid_argument);
}

TEST_CASE("parametric derivative") {
    // -cot(4 pi t) at t = 1/8.
    const auto mid = parametric_derivative(TwoTermSpec(1, 3, -0.5), 0.125);
    REQUIRE(mid.has_value());
    CHECK(std::abs(*mid) < 1e-12);

    // -cot(2 pi t) at t = 1/4.
    const auto circle = parametric_derivative(TwoTermSpec(1, 3, -1.0), 0.25);
    REQUIRE(circle.has_value());
    CHECK(std::abs(*circle) < 1e-12);

    CHECK_FALSE(parametric_derivative(TwoTermSpec(1, 3, -0.5), 0.25).has_value());
    CHECK_FALSE(parametric_derivative(TwoTermSpec(1, 3, -0.5), 0.0).has_value());

    const CurveSpec spec = TwoTermSpec(1, 3, -0.5);
    for (int k = 1; k < 1000; ++k) {
        const double t = k / 1000.0;
        if (std::abs(4.0 * t - std::nearbyint(4.0 * t)) < 1e-9) {
            continue;
        }
        const auto v = parametric_derivative(spec, t);
        REQUIRE(v.has_value());
        CHECK(std::abs(*v + 1.0 / std::tan(4.0 * kPi * t)) < 1e-9);
    }
}

TEST_CASE("rotate") {
    const CurveSpec spec = TwoTermSpec(1, 3, 0.0);
    CHECK(rotate(spec, 0.0) == spec);

    const PlanePoint quarter = evaluate(rotate(spec, kPi / 2.0), 0.0);
    CHECK(std::abs(quarter.x) < 1e-15);
    CHECK(quarter.y == doctest::Approx(2.0));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> t_dist(0.0, 1.0);
    const CurveSpec rotated = TwoTermSpec(2, 5, 0.4);
    const CurveSpec back = rotate(rotate(rotated, 1.234), -1.234);
    for (int i = 0; i < 100; ++i) {
        const double t = t_dist(rng);
        CHECK(distance(evaluate(back, t), evaluate(rotated, t)) < 1e-12);
        const Complex turned = evaluate(rotated, t).to_complex() * std::polar(1.0, 1.234);
        CHECK(distance(evaluate(rotate(rotated, 1.234), t), PlanePoint::from_complex(turned)) < 1e-12);
    }
}

TEST_CASE("sample") {
    const auto two = sample(TwoTermSpec(1, 3, 0.0), 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == PlanePoint{2.0, 0.0});
    CHECK(two[1] == PlanePoint{-2.0, 0.0});

    const auto quarters = sample(single(1, 1.0), 4);
    CHECK(quarters[0] == PlanePoint{1.0, 0.0});
    CHECK(quarters[1] == PlanePoint{0.0, 1.0});
    CHECK(quarters[2] == PlanePoint{-1.0, 0.0});
    CHECK(quarters[3] == PlanePoint{0.0, -1.0});

    CHECK_THROWS_AS(sample(single(1, 1.0), 1), std::invalid_argument);
}

TEST_CASE("properties over random curves") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> t_dist(-50.0, 50.0);
    for (int trial = 0; trial < 50; ++trial) {
        const CurveSpec spec = random_spec(rng);
        const double bound = spec.scale();
        for (int i = 0; i < 20; ++i) {
            const double t = t_dist(rng);
            // Periodicity.
            CHECK(distance(evaluate(spec, t), evaluate(spec, t + 1.0)) < 1e-12);
            // Triangle inequality.
            CHECK(evaluate(spec, t).norm() <= bound + 1e-12);
            // Analytic derivative against central differences.
            CHECK(distance(derivative(spec, t, 1), finite_difference(spec, t)) < 1e-4);
        }
        for (const auto& p : sample(spec, 64)) {
            CHECK(p.norm() <= bound + 1e-12);
        }
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = unit(rng);
        const CurveSpec spec = TwoTermSpec(2, 7, unit(rng) * 2.0 - 1.0);
        // Real weights: gamma(1 - t) is the mirror image of gamma(t).
        const PlanePoint p = evaluate(spec, t);
        const PlanePoint q = evaluate(spec, 1.0 - t);
        CHECK(distance(q, PlanePoint{p.x, -p.y}) < 1e-12);
    }
}

TEST_CASE("unit_phase is exact at quarter turns") {
    CHECK(unit_phase(0.0) == Complex{1.0, 0.0});
    CHECK(unit_phase(0.25) == Complex{0.0, 1.0});
    CHECK(unit_phase(0.5) == Complex{-1.0, 0.0});
    CHECK(unit_phase(0.75) == Complex{0.0, -1.0});
    CHECK(unit_phase(-0.25) == Complex{0.0, -1.0});
    CHECK(std::abs(unit_phase(0.1) - std::polar(1.0, 0.2 * kPi)) < 1e-15);
    CHECK(reduce_period(-1e-18) < 1.0);
}

TEST_CASE("curve JSON round trip") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
        const CurveSpec spec = random_spec(rng);
        const std::string text = curve_to_json(spec).dump();
        CHECK(parse_curve_json(text) == spec);
    }
    CHECK(curve_to_json(TwoTermSpec(1, 3, 0.5)).dump() ==
          R"({"terms":[{"freq":1,"w_im":0.0,"w_re":0.5},{"freq":3,"w_im":0.0,"w_re":1.5}]})");
    CHECK_THROWS_AS(parse_curve_json("{\"terms\":[]}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_curve_json("{\"terms\":[{\"w_re\":1}]}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_curve_json("not json"), std::invalid_argument);
}
