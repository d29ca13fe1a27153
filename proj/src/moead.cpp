#include "pbhfs/moead.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "pbhfs/error.hpp"
#include "pbhfs/initialization.hpp"

namespace pbhfs {

using nlohmann::json;

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::amoead: return "AMOEAD";
    case Variant::amoead1: return "AMOEAD1";
    case Variant::amoead2: return "AMOEAD2";
    case Variant::amoead3: return "AMOEAD3";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  for (Variant v : {Variant::amoead, Variant::amoead1, Variant::amoead2, Variant::amoead3})
    if (name == variant_name(v)) return v;
  throw ParameterError("unknown variant '" + name + "' (expected AMOEAD, AMOEAD1, AMOEAD2 or AMOEAD3)");
}

void SolverParams::validate() const {
  if (popsize < 2) throw ParameterError("popsize must be >= 2");
  if (neighbors < 2 || neighbors > popsize) throw ParameterError("neighbourhood size T must lie in [2, popsize]");
  if (rotation_threshold < 1) throw ParameterError("rotation threshold L must be >= 1");
  if (!(alpha > 0 && alpha <= 1)) throw ParameterError("alpha must lie in (0, 1]");
  if (!(gamma >= 0 && gamma <= 1)) throw ParameterError("gamma must lie in [0, 1]");
  if (!(mutation_rate >= 0 && mutation_rate <= 1)) throw ParameterError("mutation rate must lie in [0, 1]");
  if (runtime_ms < 0 || budget_evals < 0) throw ParameterError("termination limits must be nonnegative");
  if (runtime_ms == 0 && budget_evals == 0) throw ParameterError("a runtime or an evaluation budget is required");
}

std::vector<WeightVector> init_weights(int popsize, int neighbors) {
  if (popsize < 2) throw ParameterError("popsize must be >= 2");
  if (neighbors < 1 || neighbors > popsize) throw ParameterError("neighbourhood size must lie in [1, popsize]");
  std::vector<WeightVector> w(popsize);
  for (int i = 0; i < popsize; ++i) {
    const double a = static_cast<double>(i) / (popsize - 1);
    w[i].lambda = {a, 1.0 - a};
  }
  for (int i = 0; i < popsize; ++i) rebuild_neighbors(w, i, neighbors);
  return w;
}

void rebuild_neighbors(std::vector<WeightVector>& w, int index, int neighbors) {
  std::vector<std::pair<double, int>> d;
  for (int k = 0; k < static_cast<int>(w.size()); ++k) {
    const double dx = w[k].lambda[0] - w[index].lambda[0];
    const double dy = w[k].lambda[1] - w[index].lambda[1];
    d.emplace_back(k == index ? -1.0 : dx * dx + dy * dy, k);
  }
  std::sort(d.begin(), d.end());
  w[index].neighbors.clear();
  for (int k = 0; k < neighbors; ++k) w[index].neighbors.push_back(d[k].second);
}

double aggregate(const Vec2& f, const Vec2& lambda, const Vec2& ideal) {
  return std::max(lambda[0] * (f[0] - ideal[0]), lambda[1] * (f[1] - ideal[1]));
}

// --- evolution ---------------------------------------------------------------

Schedule crossover(const Instance& in, const Schedule& parent, const Schedule& mate,
                   const std::vector<bool>& take) {
  Schedule child = parent;
  for (auto& batches : child.machines) {
    for (auto& b : batches) std::erase_if(b.jobs, [&](int job) { return take[job]; });
    std::erase_if(batches, [](const Batch& b) { return b.jobs.empty(); });
  }
  for (int m = 0; m < in.machines(); ++m) {
    const bool batch_stage = in.is_batch_stage(in.stage_of(m));
    auto& batches = child.machines[m];
    for (int p = 0; p < static_cast<int>(mate.machines[m].size()); ++p) {
      Batch group;
      for (int job : mate.machines[m][p].jobs)
        if (take[job]) group.jobs.push_back(job);
      if (group.jobs.empty()) continue;
      if (batch_stage && p < static_cast<int>(batches.size()) &&
          batch_volume(in, batches[p]) + batch_volume(in, group) <= in.capacity(m)) {
        auto& jobs = batches[p].jobs;
        jobs.insert(jobs.end(), group.jobs.begin(), group.jobs.end());
        std::sort(jobs.begin(), jobs.end());
      } else {
        batches.insert(batches.begin() + std::min<std::size_t>(p, batches.size()), std::move(group));
      }
    }
  }
  return child;
}

Schedule mutate(const Instance& in, const Schedule& s, Rng& rng) {
  std::vector<int> swappable;
  for (int m = 0; m < in.machines(); ++m)
    if (s.machines[m].size() >= 2) swappable.push_back(m);
  const bool swap = !swappable.empty() && std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  if (swap) {
    Schedule out = s;
    const int m = swappable[std::uniform_int_distribution<std::size_t>(0, swappable.size() - 1)(rng)];
    auto& batches = out.machines[m];
    const auto p = std::uniform_int_distribution<std::size_t>(0, batches.size() - 2)(rng);
    std::swap(batches[p], batches[p + 1]);
    return out;
  }
  const int job = std::uniform_int_distribution<int>(0, in.jobs() - 1)(rng);
  const int stage = std::uniform_int_distribution<int>(0, in.stages() - 1)(rng);
  Detached d = detach(in, s, job, stage);
  const auto machines = in.eligible_machines(job, stage);
  const int m = machines[std::uniform_int_distribution<std::size_t>(0, machines.size() - 1)(rng)];
  auto& batches = d.schedule.machines[m];
  // The batch the operation came from is not a destination, so a lone
  // fitting origin yields a new trailing batch instead of a no-op.
  const int origin = m == d.from.machine && !d.batch_erased ? d.from.position : -1;
  for (int p = static_cast<int>(batches.size()) - 1; p >= 0; --p) {
    if (p != origin && can_join(in, m, batches[p], job)) {
      auto& jobs = batches[p].jobs;
      jobs.insert(std::upper_bound(jobs.begin(), jobs.end(), job), job);
      return d.schedule;
    }
  }
  batches.push_back(Batch{{job}});
  return d.schedule;
}

Schedule evolve(const Instance& in, const Schedule& parent, const Schedule& mate, Rng& rng, double mutation_rate) {
  std::vector<bool> take(in.jobs());
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < in.jobs(); ++i) take[i] = coin(rng);
  Schedule child = crossover(in, parent, mate, take);
  if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < mutation_rate) child = mutate(in, child, rng);
  return child;
}

// --- population management ----------------------------------------------------

void update_ideal(SolverState& st, const Objectives& o) {
  st.ideal[0] = std::min(st.ideal[0], static_cast<double>(o.makespan));
  st.ideal[1] = std::min(st.ideal[1], o.tec);
}

void update_scale(SolverState& st) {
  Vec2 worst{st.ideal[0], st.ideal[1]};
  for (const Solution& s : st.population) {
    worst[0] = std::max(worst[0], static_cast<double>(s.objectives.makespan));
    worst[1] = std::max(worst[1], s.objectives.tec);
  }
  for (int k = 0; k < 2; ++k) st.scale[k] = std::max(worst[k] - st.ideal[k], 1e-9);
}

void match_population(SolverState& st) {
  const int n = static_cast<int>(st.population.size());
  std::vector<std::tuple<double, int, int>> pairs;  // (g, weight, individual)
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) pairs.emplace_back(st.g(st.population[i].objectives, k), k, i);
  std::sort(pairs.begin(), pairs.end());
  std::vector<int> owner(n, -1);
  std::vector<bool> used(n, false);
  for (const auto& [g, k, i] : pairs) {
    if (owner[k] >= 0 || used[i]) continue;
    owner[k] = i;
    used[i] = true;
  }
  std::vector<Solution> matched;
  matched.reserve(n);
  for (int k = 0; k < n; ++k) matched.push_back(st.population[owner[k]]);
  st.population = std::move(matched);
}

bool maybe_rotate_weight(WeightVector& w, const Vec2& d, int threshold) {
  const double cross = w.lambda[0] * d[1] - w.lambda[1] * d[0];
  const int side = std::abs(cross) <= 1e-12 ? 0 : (cross > 0 ? 1 : -1);
  if (side == 0) {
    w.counter = 0;
    w.side = 0;
    return false;
  }
  if (side == w.side) {
    ++w.counter;
  } else {
    w.side = side;
    w.counter = 1;
  }
  if (w.counter < threshold) return false;

  const double from = std::atan2(w.lambda[1], w.lambda[0]);
  const double to = std::atan2(d[1], d[0]);
  const double angle = from + (to - from) / 2.0;
  const double x = std::max(0.0, std::cos(angle));
  const double y = std::max(0.0, std::sin(angle));
  w.lambda = {x / (x + y), y / (x + y)};
  w.counter = 0;
  w.side = 0;
  return true;
}

std::vector<int> update_population(SolverState& st, const Solution& child, int source, const SolverParams& params) {
  std::vector<int> replaced;
  auto replace = [&](int k) {
    st.population[k] = child;
    replaced.push_back(k);
  };

  if (params.variant == Variant::amoead3) {
    for (int k : st.weights[source].neighbors)
      if (st.g(child.objectives, k) < st.g(st.population[k].objectives, k)) replace(k);
  } else {
    auto best_of = [&](const std::vector<int>& candidates) {
      int best = candidates.front();
      for (int k : candidates)
        if (st.g(child.objectives, k) < st.g(child.objectives, best)) best = k;
      return best;
    };
    const int near = best_of(st.weights[source].neighbors);
    if (st.g(child.objectives, near) < st.g(st.population[near].objectives, near)) {
      replace(near);
    } else {
      std::vector<int> all(st.weights.size());
      std::iota(all.begin(), all.end(), 0);
      const int far = best_of(all);
      if (st.g(child.objectives, far) < st.g(st.population[far].objectives, far)) replace(far);
    }
    for (int k : replaced) {
      if (maybe_rotate_weight(st.weights[k], st.normalized(child.objectives), params.rotation_threshold)) {
        rebuild_neighbors(st.weights, k, params.neighbors);
        ++st.rotations;
      }
    }
  }
  st.replacements += static_cast<long>(replaced.size());
  st.max_replacements_per_offspring =
      std::max(st.max_replacements_per_offspring, static_cast<long>(replaced.size()));
  return replaced;
}

void update_archive(std::vector<Solution>& archive, const std::vector<Solution>& candidates) {
  for (const Solution& c : candidates) {
    bool covered = false;
    for (const Solution& a : archive)
      if (weakly_dominates(a.objectives, c.objectives)) {
        covered = true;
        break;
      }
    if (covered) continue;
    std::erase_if(archive, [&](const Solution& a) { return dominates(c.objectives, a.objectives); });
    archive.push_back(c);
  }
  std::sort(archive.begin(), archive.end(),
            [](const Solution& a, const Solution& b) { return a.objectives < b.objectives; });
}

// --- main loop ------------------------------------------------------------------

RunResult solve(const Instance& in, const SolverParams& params, std::uint64_t seed, const MoveTrace& trace) {
  params.validate();
  using clock = std::chrono::steady_clock;
  const auto started = clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(clock::now() - started).count();
  };
  auto progress = [&](const SolverState& st) {
    double p = 0.0;
    if (params.runtime_ms > 0) p = std::max(p, elapsed_ms() / static_cast<double>(params.runtime_ms));
    if (params.budget_evals > 0)
      p = std::max(p, static_cast<double>(st.evaluations) / static_cast<double>(params.budget_evals));
    return p;
  };
  auto done = [&](const SolverState& st) { return progress(st) >= 1.0; };

  Rng rng(seed);
  SolverState st;
  st.controller = QController(params.alpha, params.gamma);
  st.population = init_population(in, params.popsize, rng, params.variant == Variant::amoead1);
  st.evaluations += params.popsize;
  st.weights = init_weights(params.popsize, params.neighbors);
  st.ideal = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (const Solution& s : st.population) update_ideal(st, s.objectives);
  update_scale(st);
  match_population(st);
  update_archive(st.archive, st.population);

  const bool local_search = params.variant != Variant::amoead2;
  json archive_sizes = json::array();
  long generations = 0;
  while (!done(st)) {
    std::vector<Solution> offspring;
    for (int i = 0; i < params.popsize && !done(st); ++i) {
      const auto& nb = st.weights[i].neighbors;
      const int k = nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)];
      Solution x = evaluate(in, evolve(in, st.population[i].schedule, st.population[k].schedule, rng,
                                       params.mutation_rate));
      ++st.evaluations;
      if (local_search) {
        const int action = st.controller.select_action(st.q_state, progress(st), 1.0, rng);
        const long budget = QController::search_budget(action, in.jobs(), in.stages(), in.machines());
        Solution y = makespan_search(in, x, budget, rng, &st.evaluations, trace);
        st.q_state = st.controller.update(st.q_state, action,
                                          static_cast<double>(y.objectives.makespan - x.objectives.makespan),
                                          y.objectives.tec - x.objectives.tec);
        x = tec_split(in, std::move(y), nullptr, &st.evaluations, trace);
      }
      update_ideal(st, x.objectives);
      update_population(st, x, i, params);
      offspring.push_back(std::move(x));
    }
    offspring.insert(offspring.end(), st.population.begin(), st.population.end());
    update_archive(st.archive, offspring);
    update_scale(st);
    archive_sizes.push_back(st.archive.size());
    ++generations;
  }

  RunResult result;
  result.archive = st.archive;

  json front = json::array();
  for (const Solution& s : st.archive) front.push_back({s.objectives.makespan, s.objectives.tec});
  json q = json::array();
  for (const auto& row : st.controller.table()) q.push_back(row);
  json p = {{"popsize", params.popsize},
            {"L", params.rotation_threshold},
            {"T", params.neighbors},
            {"alpha", params.alpha},
            {"gamma", params.gamma},
            {"mutation_rate", params.mutation_rate},
            {"variant", variant_name(params.variant)},
            {"runtime_ms", params.runtime_ms},
            {"budget_evals", params.budget_evals}};
  result.report = {{"params", p},
                   {"seed", seed},
                   {"instance", {{"n_jobs", in.jobs()}, {"n_stages", in.stages()}, {"machines", in.machines()}}},
                   {"generations", generations},
                   {"archive_sizes", archive_sizes},
                   {"evaluations", st.evaluations},
                   {"replacements", st.replacements},
                   {"max_replacements_per_offspring", st.max_replacements_per_offspring},
                   {"rotations", st.rotations},
                   {"q_table", q},
                   {"front", front}};
  // Timing is only reported for wall-clock runs so that budgeted runs are reproducible byte for byte.
  if (params.runtime_ms > 0) result.report["wall_time_ms"] = elapsed_ms();
  return result;
}

} // namespace pbhfs
