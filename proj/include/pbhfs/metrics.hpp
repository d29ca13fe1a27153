#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pbhfs/objectives.hpp"

namespace pbhfs {

// Both coordinates minimized.
using Point2 = std::array<double, 2>;
using Front = std::vector<Point2>;

Front to_front(const std::vector<Objectives>& points);
// Nondominated subset, duplicates removed, sorted by the first objective.
Front nondominated_front(Front points);

struct Bounds {
  Point2 lo{0.0, 0.0};
  Point2 hi{1.0, 1.0};
};

// Componentwise min/max over all points of all fronts.
Bounds bounds_of(const std::vector<Front>& fronts);
// Maps into [0, 1] per objective; a zero span maps everything to 0.
Front normalize(const Front& front, const Bounds& bounds);

// 1.1 times the componentwise worst value over the union.
Point2 reference_point(const std::vector<Front>& fronts);

// Exact 2-D staircase area dominated by `front` and bounded by `reference`.
// Dominated points are ignored. Throws ParameterError if a point does not
// strictly dominate the reference.
double hypervolume(const Front& front, const Point2& reference);

// Mean distance from each reference point to its nearest front point.
double igd(const Front& front, const Front& reference);
// Same after normalizing both fronts with `bounds`.
double igd(const Front& front, const Front& reference, const Bounds& bounds);

// Gap uniformity with d_f = d_l = 0: sum |d_i - mean| / ((n-1) mean) over
// consecutive gaps after sorting by the first objective. Empty for fewer
// than two distinct points.
std::optional<double> spread(const Front& front);
std::optional<double> spread(const Front& front, const Bounds& bounds);

struct FrontScore {
  double hv = 0.0;
  double igd = 0.0;
  std::optional<double> spread;
};

// Scores runs on one instance against each other: HV at the shared
// reference point, IGD against the nondominated union, both IGD and spread
// normalized over the union.
std::vector<FrontScore> score_fronts(const std::vector<Front>& fronts);

struct FriedmanResult {
  std::vector<double> mean_ranks;  // per algorithm
  double chi_square = 0.0;
  int best = 0;  // algorithm with the best mean rank
};

// `scores[a][c]` for algorithm a on case c. Algorithms are ranked 1..k
// ascending by raw score in every case (average ranks on ties), so with
// `higher_is_better` the best algorithm has the highest mean rank.
FriedmanResult friedman_mean_ranks(const std::vector<std::vector<double>>& scores, bool higher_is_better);

} // namespace pbhfs
