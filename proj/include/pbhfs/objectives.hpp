#pragma once

#include <algorithm>
#include <vector>

namespace pbhfs {

// (makespan, total energy consumption); both minimized.
struct Objectives {
  long makespan = 0;
  double tec = 0.0;

  bool operator==(const Objectives&) const = default;
  auto operator<=>(const Objectives&) const = default;
};

inline bool dominates(const Objectives& a, const Objectives& b) {
  return a.makespan <= b.makespan && a.tec <= b.tec && (a.makespan < b.makespan || a.tec < b.tec);
}

inline bool weakly_dominates(const Objectives& a, const Objectives& b) {
  return a.makespan <= b.makespan && a.tec <= b.tec;
}

// Nondominated subset with duplicates removed, sorted by makespan.
inline std::vector<Objectives> nondominated(std::vector<Objectives> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Objectives> front;
  for (const auto& p : points) {
    // sorted by makespan then tec: p is dominated iff some kept point has tec <= p.tec
    if (front.empty() || p.tec < front.back().tec) front.push_back(p);
  }
  return front;
}

} // namespace pbhfs
