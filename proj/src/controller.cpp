#include "pbhfs/controller.hpp"

#include <algorithm>
#include <cmath>

namespace pbhfs {

double QController::epsilon(double elapsed, double total) {
  if (total <= 0) return 1.0 / 3.0;
  const double x = std::clamp(elapsed / total, 0.0, 1.0);
  return std::pow(1.0 / 3.0, x);
}

int QController::greedy_action(int state) const {
  const auto& row = table_[state];
  return static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
}

int QController::select_action(int state, double elapsed, double total, std::mt19937_64& rng) const {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u > epsilon(elapsed, total)) return std::uniform_int_distribution<int>(0, kActions - 1)(rng);
  return greedy_action(state);
}

int QController::classify(double d_makespan, double d_tec) {
  if (d_makespan < 0 && d_tec >= 0) return 0;
  if (d_makespan >= 0 && d_tec < 0) return 1;
  if (d_makespan >= 0 && d_tec >= 0) return 2;
  return 3;
}

int QController::update(int state, int action, double d_makespan, double d_tec) {
  const int next = classify(d_makespan, d_tec);
  const auto& row = table_[next];
  const double best = *std::max_element(row.begin(), row.end());
  double& q = table_[state][action];
  q += alpha_ * (kReward[next] + gamma_ * best - q);
  return next;
}

long QController::search_budget(int action, int jobs, int stages, int machines) {
  return std::lround(kTheta[action] * stages * jobs * machines);
}

} // namespace pbhfs
