#include "pbhfs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pbhfs/error.hpp"

namespace pbhfs {

Front to_front(const std::vector<Objectives>& points) {
  Front f;
  f.reserve(points.size());
  for (const auto& o : points) f.push_back({static_cast<double>(o.makespan), o.tec});
  return f;
}

Front nondominated_front(Front points) {
  std::sort(points.begin(), points.end());
  Front out;
  for (const auto& p : points)
    if (out.empty() || p[1] < out.back()[1]) out.push_back(p);
  return out;
}

Bounds bounds_of(const std::vector<Front>& fronts) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Bounds b{{inf, inf}, {-inf, -inf}};
  bool any = false;
  for (const auto& f : fronts)
    for (const auto& p : f) {
      any = true;
      for (int k = 0; k < 2; ++k) {
        b.lo[k] = std::min(b.lo[k], p[k]);
        b.hi[k] = std::max(b.hi[k], p[k]);
      }
    }
  if (!any) throw ParameterError("bounds of empty fronts");
  return b;
}

Front normalize(const Front& front, const Bounds& b) {
  Front out;
  out.reserve(front.size());
  for (const auto& p : front) {
    Point2 q;
    for (int k = 0; k < 2; ++k) {
      const double span = b.hi[k] - b.lo[k];
      q[k] = span > 0 ? (p[k] - b.lo[k]) / span : 0.0;
    }
    out.push_back(q);
  }
  return out;
}

Point2 reference_point(const std::vector<Front>& fronts) {
  const Bounds b = bounds_of(fronts);
  return {1.1 * b.hi[0], 1.1 * b.hi[1]};
}

double hypervolume(const Front& front, const Point2& ref) {
  for (const auto& p : front) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw ParameterError("non-finite point in front");
    if (!(p[0] < ref[0] && p[1] < ref[1])) throw ParameterError("front point outside the reference box");
  }
  double area = 0.0;
  double ceiling = ref[1];
  for (const auto& p : nondominated_front(front)) {
    area += (ref[0] - p[0]) * (ceiling - p[1]);
    ceiling = p[1];
  }
  return area;
}

double igd(const Front& front, const Front& reference) {
  if (front.empty() || reference.empty()) throw ParameterError("IGD needs two non-empty fronts");
  double total = 0.0;
  for (const auto& r : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : front) best = std::min(best, std::hypot(p[0] - r[0], p[1] - r[1]));
    total += best;
  }
  return total / static_cast<double>(reference.size());
}

double igd(const Front& front, const Front& reference, const Bounds& bounds) {
  return igd(normalize(front, bounds), normalize(reference, bounds));
}

std::optional<double> spread(const Front& front) {
  Front f = front;
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  if (f.size() < 2) return std::nullopt;
  std::vector<double> gaps;
  for (std::size_t i = 1; i < f.size(); ++i) gaps.push_back(std::hypot(f[i][0] - f[i - 1][0], f[i][1] - f[i - 1][1]));
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
  if (mean <= 0) return std::nullopt;
  double dev = 0.0;
  for (double d : gaps) dev += std::abs(d - mean);
  return dev / (static_cast<double>(gaps.size()) * mean);
}

std::optional<double> spread(const Front& front, const Bounds& bounds) {
  return spread(normalize(front, bounds));
}

std::vector<FrontScore> score_fronts(const std::vector<Front>& fronts) {
  std::vector<FrontScore> out(fronts.size());
  Front all;
  for (const auto& f : fronts) all.insert(all.end(), f.begin(), f.end());
  if (all.empty()) return out;
  const Front reference = nondominated_front(all);
  const Bounds bounds = bounds_of(fronts);
  const Point2 ref = reference_point(fronts);
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    if (fronts[i].empty()) throw ParameterError("cannot score an empty front");
    out[i].hv = hypervolume(fronts[i], ref);
    out[i].igd = igd(fronts[i], reference, bounds);
    out[i].spread = spread(fronts[i], bounds);
  }
  return out;
}

FriedmanResult friedman_mean_ranks(const std::vector<std::vector<double>>& scores, bool higher_is_better) {
  const std::size_t k = scores.size();
  if (k < 2) throw ParameterError("Friedman ranking needs at least two algorithms");
  const std::size_t n = scores[0].size();
  if (n < 1) throw ParameterError("Friedman ranking needs at least one case");
  for (const auto& row : scores)
    if (row.size() != n) throw ParameterError("ragged score matrix");

  FriedmanResult r;
  r.mean_ranks.assign(k, 0.0);
  std::vector<std::size_t> order(k);
  for (std::size_t c = 0; c < n; ++c) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a][c] < scores[b][c]; });
    for (std::size_t i = 0; i < k;) {
      std::size_t j = i;
      while (j + 1 < k && scores[order[j + 1]][c] == scores[order[i]][c]) ++j;
      const double rank = (static_cast<double>(i + j) / 2.0) + 1.0;
      for (std::size_t t = i; t <= j; ++t) r.mean_ranks[order[t]] += rank;
      i = j + 1;
    }
  }
  double sum_sq = 0.0;
  for (double& m : r.mean_ranks) {
    sum_sq += m * m;
    m /= static_cast<double>(n);
  }
  const double kd = static_cast<double>(k), nd = static_cast<double>(n);
  r.chi_square = 12.0 / (nd * kd * (kd + 1.0)) * sum_sq - 3.0 * nd * (kd + 1.0);
  for (std::size_t a = 1; a < k; ++a) {
    const bool better = higher_is_better ? r.mean_ranks[a] > r.mean_ranks[r.best] : r.mean_ranks[a] < r.mean_ranks[r.best];
    if (better) r.best = static_cast<int>(a);
  }
  return r;
}

} // namespace pbhfs
