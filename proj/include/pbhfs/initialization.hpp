#pragma once

#include <array>
#include <random>
#include <vector>

#include "pbhfs/instance.hpp"
#include "pbhfs/neighborhood.hpp"
#include "pbhfs/schedule.hpp"

namespace pbhfs {

enum class SequenceRule { random, kmeans };

// Machine choice for each operation; the batch rule is shared: join the
// machine's last batch if the job fits, otherwise open a new one.
enum class PlacementRule {
  mfbf,  // earliest start
  mcbf,  // earliest completion
  mtbf,  // least added energy
  mpbf,  // least processing time
  mrbf,  // random machine
};

struct InitStrategy {
  SequenceRule sequence;
  PlacementRule placement;
  bool operator==(const InitStrategy&) const = default;
};

// The ten combinations in round-robin order: random sequence with each
// placement rule, then k-means sequence with each.
const std::array<InitStrategy, 10>& init_strategies();

const char* sequence_rule_name(SequenceRule rule);
const char* placement_rule_name(PlacementRule rule);

// Number of clusters used by the k-means sequence rule.
inline int kmeans_clusters(int jobs) { return jobs < 5 ? jobs : 5; }

// RANDOM: uniform permutation. KMEANS: jobs clustered on their per-stage mean
// processing times, clusters by ascending centroid norm, shuffled inside.
std::vector<int> make_sequence(const Instance& instance, SequenceRule rule, Rng& rng);

// Stage-by-stage list construction. Stage 0 follows `sequence`; later
// stages take jobs by ascending release time (previous-stage completion).
Schedule place(const Instance& instance, const std::vector<int>& sequence, PlacementRule rule, Rng& rng);

// `popsize` decoded individuals, strategies assigned round-robin. With
// `random_only` every individual uses (random, mrbf).
std::vector<Solution> init_population(const Instance& instance, int popsize, Rng& rng, bool random_only = false);

} // namespace pbhfs
