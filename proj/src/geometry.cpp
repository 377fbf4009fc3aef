#include "epicusp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "epicusp/parallel.hpp"

namespace epicusp {

namespace {

double circular_gap(double t1, double t2) noexcept {
    const double d = reduce_period(t1 - t2);
    return std::min(d, 1.0 - d);
}

PlanePoint rotate_point(PlanePoint p, Complex turn) noexcept {
    return PlanePoint::from_complex(p.to_complex() * turn);
}

}  // namespace

SymmetryReport verify_symmetry(const TwoTermSpec& spec, int n) {
    if (n < 100) {
        throw std::invalid_argument("verify_symmetry requires n >= 100");
    }
    const CurveSpec curve = spec.to_curve();
    const int gap = spec.b() - spec.a();

    SymmetryReport report;
    report.claimed_order = gap;
    report.coprime = std::gcd(spec.a(), spec.b()) == 1;
    report.degenerate = std::abs(spec.s()) == 1.0;

    const Complex turn = unit_phase(static_cast<double>(spec.a() % gap) / gap);
    for (int j = 0; j < n; ++j) {
        const double t = static_cast<double>(j) / n;
        const PlanePoint p = evaluate(curve, t);
        const PlanePoint shifted = evaluate(curve, t + 1.0 / gap);
        report.rotation_deviation = std::max(report.rotation_deviation, distance(shifted, rotate_point(p, turn)));
        const PlanePoint mirrored = evaluate(curve, 1.0 - t);
        report.reflection_deviation = std::max(report.reflection_deviation, distance(mirrored, PlanePoint{p.x, -p.y}));
    }
    return report;
}

namespace {

struct SegmentHit {
    double u = 0.0;  // position along the first segment, [0, 1]
    double v = 0.0;  // position along the second segment, [0, 1]
    double dist = 0.0;
};

// Closest pair of points between segments [p0, p1] and [q0, q1].
SegmentHit segment_proximity(PlanePoint p0, PlanePoint p1, PlanePoint q0, PlanePoint q1) {
    const PlanePoint r = p1 - p0;
    const PlanePoint s = q1 - q0;
    const double denom = cross(r, s);
    if (denom != 0.0) {
        const PlanePoint w = q0 - p0;
        const double u = cross(w, s) / denom;
        const double v = cross(w, r) / denom;
        if (u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0) {
            return {u, v, 0.0};
        }
    }
    auto project = [](PlanePoint x, PlanePoint a, PlanePoint b) {
        const PlanePoint ab = b - a;
        const double len2 = dot(ab, ab);
        return len2 > 0.0 ? std::clamp(dot(x - a, ab) / len2, 0.0, 1.0) : 0.0;
    };
    SegmentHit best{0.0, 0.0, distance(p0, q0)};
    auto consider = [&](double u, double v) {
        const double d = distance(p0 + u * r, q0 + v * s);
        if (d < best.dist) {
            best = {u, v, d};
        }
    };
    consider(0.0, project(p0, q0, q1));
    consider(1.0, project(p1, q0, q1));
    consider(project(q0, p0, p1), 0.0);
    consider(project(q1, p0, p1), 1.0);
    return best;
}

struct Crossing {
    double t1;
    double t2;
};

// Where the two branches touch with parallel tangents, gamma(t1) - gamma(t2)
// has a singular Jacobian and its root is only determined to ~sqrt(eps).
// The pair (<F, gamma'(t1)>, gamma'(t1) x gamma'(t2)) vanishes there too and
// is regular, so it pins the parameters to full precision.
void polish_tangential(const CurveSpec& spec, double& t1, double& t2) {
    for (int iter = 0; iter < 30; ++iter) {
        const PlanePoint f = evaluate(spec, t1) - evaluate(spec, t2);
        const PlanePoint d1 = derivative(spec, t1, 1);
        const PlanePoint d2 = derivative(spec, t2, 1);
        const PlanePoint dd1 = derivative(spec, t1, 2);
        const PlanePoint dd2 = derivative(spec, t2, 2);
        const double g1 = dot(f, d1);
        const double g2 = cross(d1, d2);
        const double j11 = dot(d1, d1) + dot(f, dd1);
        const double j12 = -dot(d2, d1);
        const double j21 = cross(dd1, d2);
        const double j22 = cross(d1, dd2);
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) {
            return;
        }
        const double dt1 = (-g1 * j22 + j12 * g2) / det;
        const double dt2 = (-j11 * g2 + g1 * j21) / det;
        t1 += dt1;
        t2 += dt2;
        if (std::abs(dt1) + std::abs(dt2) < 1e-16) {
            return;
        }
    }
}

std::optional<Crossing> refine_crossing(const CurveSpec& spec, double t1, double t2, double tol) {
    constexpr int kMaxIterations = 60;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const PlanePoint g = evaluate(spec, t1) - evaluate(spec, t2);
        if (g.x == 0.0 && g.y == 0.0) {
            break;
        }
        const PlanePoint d1 = derivative(spec, t1, 1);
        const PlanePoint d2 = derivative(spec, t2, 1);
        // J = [d1, -d2]; solve J (dt1, dt2)^T = -g.
        const double det = -cross(d1, d2);
        if (std::abs(det) <= 1e-14 * d1.norm() * d2.norm()) {
            break;
        }
        const double dt1 = (-g.x * -d2.y - (-d2.x) * -g.y) / det;
        const double dt2 = (d1.x * -g.y - (-g.x) * d1.y) / det;
        t1 += dt1;
        t2 += dt2;
        if (std::abs(dt1) + std::abs(dt2) < 1e-16) {
            break;
        }
    }
    const PlanePoint d1 = derivative(spec, t1, 1);
    const PlanePoint d2 = derivative(spec, t2, 1);
    if (std::abs(cross(d1, d2)) <= 1e-4 * d1.norm() * d2.norm()) {
        double p1 = t1;
        double p2 = t2;
        polish_tangential(spec, p1, p2);
        if (distance(evaluate(spec, p1), evaluate(spec, p2)) <= distance(evaluate(spec, t1), evaluate(spec, t2)) &&
            std::abs(p1 - t1) + std::abs(p2 - t2) < 1e-6) {
            t1 = p1;
            t2 = p2;
        }
    }
    if (distance(evaluate(spec, t1), evaluate(spec, t2)) > tol) {
        return std::nullopt;
    }
    auto wrap = [](double t) {
        const double r = reduce_period(t);
        return 1.0 - r < 1e-12 ? 0.0 : r;
    };
    return Crossing{wrap(t1), wrap(t2)};
}

std::int64_t cell_key(std::int64_t ix, std::int64_t iy) noexcept {
    return (ix << 32) ^ (iy & 0xffffffff);
}

}  // namespace

IntersectionSearch self_intersections(const CurveSpec& spec, int t_grid, double tol,
                                      std::optional<int> grid_denominator) {
    if (t_grid < 256) {
        throw std::invalid_argument("self_intersections requires t_grid >= 256");
    }
    if (tol <= 0.0) {
        tol = 1e-9 * spec.scale();
    }
    const auto n = static_cast<std::size_t>(t_grid);
    const std::vector<PlanePoint> pts = sample(spec, t_grid);

    double cell = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        cell = std::max(cell, distance(pts[k], pts[(k + 1) % n]));
    }
    cell = std::max(cell, 1e-12 * spec.scale());
    // Slack for crossings that sit on a sample point and for rounding in the
    // segment test; refinement sorts out the near misses.
    const double pad = 0.05 * cell;

    std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets;
    for (std::size_t k = 0; k < n; ++k) {
        const PlanePoint p = pts[k];
        const PlanePoint q = pts[(k + 1) % n];
        const auto x0 = static_cast<std::int64_t>(std::floor((std::min(p.x, q.x) - pad) / cell));
        const auto x1 = static_cast<std::int64_t>(std::floor((std::max(p.x, q.x) + pad) / cell));
        const auto y0 = static_cast<std::int64_t>(std::floor((std::min(p.y, q.y) - pad) / cell));
        const auto y1 = static_cast<std::int64_t>(std::floor((std::max(p.y, q.y) + pad) / cell));
        for (auto ix = x0; ix <= x1; ++ix) {
            for (auto iy = y0; iy <= y1; ++iy) {
                buckets[cell_key(ix, iy)].push_back(k);
            }
        }
    }

    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& [key, members] : buckets) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const std::size_t lo = std::min(members[i], members[j]);
                const std::size_t hi = std::max(members[i], members[j]);
                const std::size_t apart = std::min(hi - lo, n - (hi - lo));
                if (apart >= 2) {
                    pairs.emplace(lo, hi);
                }
            }
        }
    }

    struct Seed {
        double t1;
        double t2;
    };
    std::vector<Seed> seeds;
    for (const auto& [i, j] : pairs) {
        const SegmentHit hit = segment_proximity(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]);
        if (hit.dist <= pad) {
            seeds.push_back({(static_cast<double>(i) + hit.u) / t_grid, (static_cast<double>(j) + hit.v) / t_grid});
        }
    }

    IntersectionSearch search;
    search.candidates = static_cast<int>(seeds.size());
    std::vector<std::optional<Crossing>> solved(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t k) { solved[k] = refine_crossing(spec, seeds[k].t1, seeds[k].t2, tol); });

    const double min_gap = 1.0 / t_grid;
    constexpr double kMerge = 1e-7;
    for (const auto& c : solved) {
        if (!c || circular_gap(c->t1, c->t2) <= min_gap) {
            ++search.dropped;
            continue;
        }
        IntersectionRecord rec;
        rec.t1 = std::min(c->t1, c->t2);
        rec.t2 = std::max(c->t1, c->t2);
        const bool seen = std::any_of(search.records.begin(), search.records.end(), [&](const IntersectionRecord& r) {
            return circular_gap(r.t1, rec.t1) < kMerge && circular_gap(r.t2, rec.t2) < kMerge;
        });
        if (seen) {
            continue;
        }
        rec.point = evaluate(spec, rec.t1);
        if (grid_denominator && *grid_denominator > 0) {
            const int N = *grid_denominator;
            const double j1 = std::nearbyint(rec.t1 * N);
            const double j2 = std::nearbyint(rec.t2 * N);
            if (std::abs(rec.t1 - j1 / N) <= 1e-9 && std::abs(rec.t2 - j2 / N) <= 1e-9) {
                rec.on_rational_grid = true;
                const int k1 = static_cast<int>(j1) % N;
                const int k2 = static_cast<int>(j2) % N;
                rec.grid_index_pair = std::pair{std::min(k1, k2), std::max(k1, k2)};
            }
        }
        search.records.push_back(rec);
    }
    std::sort(search.records.begin(), search.records.end(), [](const IntersectionRecord& x, const IntersectionRecord& y) {
        return x.t1 != y.t1 ? x.t1 < y.t1 : x.t2 < y.t2;
    });
    return search;
}

IntersectionSearch self_intersections(const TwoTermSpec& spec, int t_grid) {
    std::optional<int> denom;
    if (spec.s() == 0.0) {
        denom = spec.b() * spec.b() - spec.a() * spec.a();
    }
    return self_intersections(spec.to_curve(), t_grid, 0.0, denom);
}

std::vector<std::pair<int, int>> grid_coincidences(int a, int b) {
    const TwoTermSpec spec(a, b, 0.0);
    const CurveSpec curve = spec.to_curve();
    const int N = b * b - a * a;
    const double tol = 1e-9 * curve.scale();
    std::vector<PlanePoint> pts;
    for (int j = 0; j < N; ++j) {
        pts.push_back(evaluate(curve, static_cast<double>(j) / N));
    }
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < N; ++j) {
        for (int k = j + 1; k < N; ++k) {
            if (distance(pts[static_cast<std::size_t>(j)], pts[static_cast<std::size_t>(k)]) < tol) {
                out.emplace_back(j, k);
            }
        }
    }
    return out;
}

bool grid_intersection_check(int a, int b) {
    const TwoTermSpec spec(a, b, 0.0);
    if (std::gcd(a, b) != 1) {
        throw std::invalid_argument("grid_intersection_check requires coprime a, b");
    }
    const IntersectionSearch found = self_intersections(spec, kDefaultIntersectionGrid);
    std::set<std::pair<int, int>> numeric;
    for (const auto& rec : found.records) {
        if (!rec.on_rational_grid) {
            return false;
        }
        numeric.insert(*rec.grid_index_pair);
    }
    for (const auto& pair : grid_coincidences(a, b)) {
        if (!numeric.contains(pair)) {
            return false;
        }
    }
    return true;
}

}  // namespace epicusp
