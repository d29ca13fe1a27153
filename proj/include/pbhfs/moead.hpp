#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbhfs/controller.hpp"
#include "pbhfs/instance.hpp"
#include "pbhfs/neighborhood.hpp"

namespace pbhfs {

using Vec2 = std::array<double, 2>;

// AMOEAD is the full method; the numbered variants each drop one part:
// 1 = random initialization only, 2 = no critical-path/TEC local search,
// 3 = classic MOEA/D replacement of every improved neighbour.
enum class Variant { amoead, amoead1, amoead2, amoead3 };

const char* variant_name(Variant v);
Variant parse_variant(const std::string& name);

struct SolverParams {
  int popsize = 40;
  int rotation_threshold = 2;  // L
  int neighbors = 5;           // T
  double alpha = 0.1;
  double gamma = 0.9;
  double mutation_rate = 0.1;
  Variant variant = Variant::amoead;
  long runtime_ms = 0;    // wall-clock limit, 0 = unused
  long budget_evals = 0;  // schedule evaluations, 0 = unused

  void validate() const;
};

struct WeightVector {
  Vec2 lambda{0.5, 0.5};
  std::vector<int> neighbors;  // indices of the T closest vectors, self included
  int counter = 0;             // consecutive updates on the same side
  int side = 0;
};

// lambda_i = (i/(n-1), 1 - i/(n-1)) with T nearest neighbours each.
std::vector<WeightVector> init_weights(int popsize, int neighbors);
void rebuild_neighbors(std::vector<WeightVector>& weights, int index, int neighbors);

// Chebyshev scalarization max(l1 (f1 - z1), l2 (f2 - z2)).
double aggregate(const Vec2& f, const Vec2& lambda, const Vec2& ideal);

// Offspring keeps the parent's placement except for `take_from_mate` jobs,
// which adopt the mate's machine and batch position at every stage (merged
// into the batch at that position when it fits, else as a new batch).
Schedule crossover(const Instance& instance, const Schedule& parent, const Schedule& mate,
                   const std::vector<bool>& take_from_mate);
// Relocates a random operation into the last batch that can take it on a
// random eligible machine (new last batch if none), or swaps two adjacent
// batches on one machine.
Schedule mutate(const Instance& instance, const Schedule& schedule, Rng& rng);
// Uniform job subset crossover followed by mutation with `mutation_rate`.
Schedule evolve(const Instance& instance, const Schedule& parent, const Schedule& mate, Rng& rng,
                double mutation_rate = 0.1);

struct SolverState {
  std::vector<Solution> population;  // population[k] is bound to weights[k]
  std::vector<WeightVector> weights;
  Vec2 ideal{0.0, 0.0};
  Vec2 scale{1.0, 1.0};  // per-objective normalisation span
  QController controller;
  int q_state = 2;
  std::vector<Solution> archive;
  long evaluations = 0;
  long replacements = 0;
  long rotations = 0;
  long max_replacements_per_offspring = 0;

  Vec2 normalized(const Objectives& o) const {
    return {(static_cast<double>(o.makespan) - ideal[0]) / scale[0], (o.tec - ideal[1]) / scale[1]};
  }
  double g(const Objectives& o, int k) const { return aggregate(normalized(o), weights[k].lambda, {0.0, 0.0}); }
};

// Lowers the ideal point to include `o`.
void update_ideal(SolverState& state, const Objectives& o);
// Span from the ideal point to the population's worst values (at least 1e-9).
void update_scale(SolverState& state);

// Greedy matching of individuals to weights by smallest aggregate, without
// reuse. Reorders `state.population`.
void match_population(SolverState& state);

// Replacement step; returns the replaced subproblem indices. The improved
// rule replaces only the best neighbour subproblem, otherwise the best
// subproblem overall, in either case only if strictly better; the classic
// rule replaces every neighbour it improves. After each replacement the
// weight may rotate (improved rule only).
std::vector<int> update_population(SolverState& state, const Solution& offspring, int source,
                                   const SolverParams& params);

// Tracks which side of the weight ray `direction` (objective minus ideal)
// lies on. After `threshold` consecutive same-side updates the weight turns
// half-way towards the direction and is renormalised to sum 1.
bool maybe_rotate_weight(WeightVector& weight, const Vec2& direction, int threshold);

// Adds nondominated solutions, drops dominated ones; one per objective vector.
void update_archive(std::vector<Solution>& archive, const std::vector<Solution>& candidates);

struct RunResult {
  std::vector<Solution> archive;  // sorted by makespan
  nlohmann::json report;
};

RunResult solve(const Instance& instance, const SolverParams& params, std::uint64_t seed,
                const MoveTrace& trace = {});

} // namespace pbhfs
