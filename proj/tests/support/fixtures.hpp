#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "pbhfs/disjgraph.hpp"
#include "pbhfs/instance.hpp"
#include "pbhfs/schedule.hpp"

namespace fixtures {

using namespace pbhfs;

// Two jobs, a batch stage with one machine (capacity 10) then a discrete
// stage with one machine. Sizes (4, 5); times (3, 5) then (2, 4).
inline Instance tiny_a() {
  return Instance({true, false}, {{10}, {10}}, {4, 5}, {{{3}, {2}}, {{5}, {4}}}, 2.0, 1.0);
}

inline Schedule tiny_a_joint() {
  Schedule s;
  s.machines = {{Batch{{0, 1}}}, {Batch{{0}}, Batch{{1}}}};
  return s;
}

// Random generator instance whose operation count stays within the oracle guard.
inline Instance tiny_instance(std::uint64_t seed, int max_machines = 2) {
  std::mt19937_64 rng(seed);
  const int stages = std::uniform_int_distribution<int>(1, 2)(rng);
  const int jobs = std::uniform_int_distribution<int>(1, 8 / stages > 4 ? 4 : 8 / stages)(rng);
  GeneratorParams p;
  p.jobs = jobs;
  p.stages = stages;
  p.max_machines_per_stage = max_machines;
  p.batch_probability = 0.6;
  p.seed = seed;
  return generate_instance(p);
}

inline Instance small_instance(std::uint64_t seed, int jobs, int stages, int max_machines) {
  GeneratorParams p;
  p.jobs = jobs;
  p.stages = stages;
  p.max_machines_per_stage = max_machines;
  p.batch_probability = 0.5;
  p.seed = seed;
  return generate_instance(p);
}

// Uniformly random machine per operation, then each operation joins a random
// fitting batch or opens a new one at a random position.
inline Schedule random_schedule(const Instance& in, std::mt19937_64& rng) {
  Schedule s = Schedule::empty(in);
  std::vector<int> jobs(in.jobs());
  for (int i = 0; i < in.jobs(); ++i) jobs[i] = i;
  for (int j = 0; j < in.stages(); ++j) {
    std::shuffle(jobs.begin(), jobs.end(), rng);
    for (int job : jobs) {
      const auto ms = in.eligible_machines(job, j);
      const int m = ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)];
      auto& batches = s.machines[m];
      std::vector<int> fits;
      for (int p = 0; p < static_cast<int>(batches.size()); ++p)
        if (can_join(in, m, batches[p], job)) fits.push_back(p);
      const int choice = std::uniform_int_distribution<int>(0, static_cast<int>(fits.size()))(rng);
      if (choice < static_cast<int>(fits.size())) {
        batches[fits[choice]].jobs.push_back(job);
      } else {
        const int pos = std::uniform_int_distribution<int>(0, static_cast<int>(batches.size()))(rng);
        batches.insert(batches.begin() + pos, Batch{{job}});
      }
    }
  }
  for (auto& batches : s.machines)
    for (auto& b : batches) std::sort(b.jobs.begin(), b.jobs.end());
  return s;
}

// Longest source-to-sink path by explicit enumeration of every path.
inline long brute_longest_path(const DisjunctiveGraph& g) {
  long best = 0;
  std::function<void(int, long)> walk = [&](int v, long length) {
    length += g.weight(v);
    if (v == g.sink()) {
      best = std::max(best, length);
      return;
    }
    for (int w : g.successors(v)) walk(w, length);
  };
  walk(g.source(), 0);
  return best;
}

// Longest path through v (its own weight included) by explicit enumeration.
inline long brute_longest_through(const DisjunctiveGraph& g, int target) {
  long best = -1;
  std::function<void(int, long, bool)> walk = [&](int v, long length, bool seen) {
    length += g.weight(v);
    seen = seen || v == target;
    if (v == g.sink()) {
      if (seen) best = std::max(best, length);
      return;
    }
    for (int w : g.successors(v)) walk(w, length, seen);
  };
  walk(g.source(), 0, false);
  return best;
}

} // namespace fixtures
