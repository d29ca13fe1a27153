#pragma once

#include <array>
#include <random>

namespace pbhfs {

// Q-learning control of the makespan-search budget. Actions are the budget
// fractions theta; states classify the objective change of the last search:
//   s1: d_makespan < 0, d_tec >= 0    reward 6
//   s2: d_makespan >= 0, d_tec < 0    reward 6
//   s3: d_makespan >= 0, d_tec >= 0   reward 0
//   s4: d_makespan < 0, d_tec < 0     reward 10
class QController {
public:
  static constexpr int kStates = 4;
  static constexpr int kActions = 5;
  static constexpr std::array<double, kActions> kTheta{0.2, 0.3, 0.4, 0.5, 0.6};
  static constexpr std::array<double, kStates> kReward{6.0, 6.0, 0.0, 10.0};

  QController(double alpha = 0.1, double gamma = 0.9) : alpha_(alpha), gamma_(gamma) {}

  // Greedy probability (1/3)^(elapsed/total): 1 at the start, 1/3 at the end.
  static double epsilon(double elapsed, double total);

  // Draws u in [0,1); u > epsilon picks a uniform action, otherwise the
  // highest-valued one for `state` (lowest theta on ties).
  int select_action(int state, double elapsed, double total, std::mt19937_64& rng) const;
  int greedy_action(int state) const;

  static int classify(double d_makespan, double d_tec);

  // Q(s,a) += alpha * (R(s') + gamma * max_a' Q(s',a') - Q(s,a)); returns s'.
  int update(int state, int action, double d_makespan, double d_tec);

  // Search budget in move evaluations: theta * stages * jobs * machines.
  static long search_budget(int action, int jobs, int stages, int machines);

  double q(int state, int action) const { return table_[state][action]; }
  void set_q(int state, int action, double value) { table_[state][action] = value; }
  const std::array<std::array<double, kActions>, kStates>& table() const noexcept { return table_; }
  double alpha() const noexcept { return alpha_; }
  double gamma() const noexcept { return gamma_; }

private:
  double alpha_;
  double gamma_;
  std::array<std::array<double, kActions>, kStates> table_{};
};

} // namespace pbhfs
