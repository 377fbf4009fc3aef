#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "epicusp/curve.hpp"

namespace epicusp {

/// Sampled check of the dihedral symmetry D_{b-a} of a two-term curve.
struct SymmetryReport {
    int claimed_order = 0;
    /// max |gamma(t + 1/(b-a)) - R(2 pi a/(b-a)) gamma(t)|
    double rotation_deviation = 0.0;
    /// max |gamma(1 - t) - conj(gamma(t))|
    double reflection_deviation = 0.0;
    bool coprime = false;
    /// s = +-1: the curve is a circle and has more symmetry than D_{b-a}.
    bool degenerate = false;

    bool verified() const noexcept {
        return coprime && rotation_deviation < 1e-9 && reflection_deviation < 1e-9;
    }
};

/// n >= 100 uniform samples.
SymmetryReport verify_symmetry(const TwoTermSpec& spec, int n);

struct IntersectionRecord {
    double t1 = 0.0;
    double t2 = 0.0;
    PlanePoint point;
    bool on_rational_grid = false;
    std::optional<std::pair<int, int>> grid_index_pair;
};

struct IntersectionSearch {
    std::vector<IntersectionRecord> records;
    int candidates = 0;
    int dropped = 0;  // candidates whose refinement did not reach a crossing
};

inline constexpr int kDefaultIntersectionGrid = 4096;

/// Self-intersections (double points) of a closed curve.
///
/// The curve is sampled at t_grid points and the resulting polyline segments
/// are bucketed in a uniform spatial hash. Nearby non-adjacent segment pairs
/// seed a Newton solve of gamma(t1) = gamma(t2); solutions with
/// |gamma(t1) - gamma(t2)| <= tol and t1, t2 more than 1/t_grid apart are kept.
/// A non-positive tol selects 1e-9 * scale.
///
/// When grid_denominator N is given, records whose parameters both lie within
/// 1e-9 of some j/N are flagged on_rational_grid.
IntersectionSearch self_intersections(const CurveSpec& spec, int t_grid, double tol = 0.0,
                                      std::optional<int> grid_denominator = std::nullopt);

/// As above; at s = 0 the grid denominator b^2 - a^2 is filled in.
IntersectionSearch self_intersections(const TwoTermSpec& spec, int t_grid = kDefaultIntersectionGrid);

/// All pairs 0 <= j < j' < b^2 - a^2 with gamma_{a,b}^0(j/N) = gamma_{a,b}^0(j'/N).
std::vector<std::pair<int, int>> grid_coincidences(int a, int b);

/// True iff, at s = 0, every numerically found self-intersection lies on the
/// j/(b^2 - a^2) grid and every coinciding grid pair is found numerically.
bool grid_intersection_check(int a, int b);

}  // namespace epicusp
