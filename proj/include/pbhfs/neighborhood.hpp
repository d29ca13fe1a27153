#pragma once

#include <functional>
#include <random>
#include <vector>

#include "pbhfs/disjgraph.hpp"
#include "pbhfs/instance.hpp"
#include "pbhfs/objectives.hpp"
#include "pbhfs/schedule.hpp"

namespace pbhfs {

using Rng = std::mt19937_64;

// A schedule together with its decoded objective values.
struct Solution {
  Schedule schedule;
  Objectives objectives;
};

Solution evaluate(const Instance& instance, Schedule schedule);

enum class MoveKind { n6, insertion, recombination, split };
const char* move_kind_name(MoveKind kind);

struct MoveRecord {
  MoveKind kind;
  int machine = -1;
  int position = -1;
  int op = -1;
  long delta_makespan = 0;
  double delta_tec = 0.0;
  bool accepted = false;
};

using MoveTrace = std::function<void(const MoveRecord&)>;

// --- removal and reinsertion ------------------------------------------------

struct Detached {
  Schedule schedule;  // without the operation; an emptied batch is erased
  Location from;
  bool batch_erased = false;
};

Detached detach(const Instance& instance, const Schedule& schedule, int job, int stage);

// Candidate place for a detached operation, scored on the graph of the
// schedule without it. For an existing batch with longest member u:
//   bv = max(0, f_u - f_v) + max(0, p_uk - p_vk) + max(0, t_u - t_v)
// and the longest path through the grown batch is f_v + p_vk + t_v + bv.
// `estimate` is the resulting makespan: the larger of that path and the
// longest path avoiding the operation.
struct InsertionTarget {
  int machine = -1;
  int position = -1;
  bool new_batch = false;
  long through = 0;   // longest s-e path through the operation after insertion
  long estimate = 0;  // resulting makespan
  long bv = 0;        // existing batches only
  long paper_bv = 0;  // max(0, f_u - f_v) + max(0, p_uk - p_vk, t_u - t_v)
};

// Existing batches on eligible machines of the operation's stage that can
// take the job, in (machine, position) order.
std::vector<InsertionTarget> batch_targets(const Instance& instance, const Schedule& detached,
                                           const DisjunctiveGraph& detached_graph, int job, int stage);
// Every slot for a new singleton batch on eligible machines.
std::vector<InsertionTarget> new_batch_targets(const Instance& instance, const Schedule& detached,
                                               const DisjunctiveGraph& detached_graph, int job, int stage);
// Minimum-bv existing batch (ties by machine, position); when none fits, the
// new-batch slot with the smallest resulting makespan.
InsertionTarget choose_insertion(const Instance& instance, const Schedule& detached,
                                 const DisjunctiveGraph& detached_graph, int job, int stage);
Schedule apply_insertion(const Schedule& detached, const InsertionTarget& target, int job);

// Removes the operation and reinserts it at the minimum-bv batch.
Schedule batch_insertion(const Instance& instance, const Schedule& schedule, int op);

// Moving `job` from batch `position` to batch `position - 1` on one machine.
// `rv` is the resulting makespan computed on the graph without the job.
struct PullCandidate {
  int job = -1;
  long rv = 0;
  long through = 0;
};

// Members of batch `position` that fit into batch `position - 1`, sorted by
// (rv, through, job).
std::vector<PullCandidate> pull_candidates(const Instance& instance, const Schedule& schedule, int machine,
                                           int position);
Schedule apply_pull(const Schedule& schedule, int machine, int position, int job);

// Removes the operation, then walks its machine from the removal point
// towards the front pulling minimum-rv members of each batch into the batch
// before it while capacity allows and the makespan does not grow, and finally
// reinserts the operation at the minimum-bv batch. Machines with fewer than
// two batches are left untouched.
Schedule batch_recombination(const Instance& instance, const Schedule& schedule, int op);

// --- searches --------------------------------------------------------------

struct SearchBudget {
  long limit = 0;
  long used = 0;
  bool exhausted() const noexcept { return used >= limit; }
};

// Moves every interior batch of each critical block to the block head and
// the head into the block; a move is kept only if it dominates. Stops after a
// sweep without improvement or when the budget runs out.
Solution n6_search(const Instance& instance, Solution start, SearchBudget& budget,
                   const MoveTrace& trace = {});

// Per stage, a random critical operation is reinserted (insertion round) and
// recombined (recombination round); dominating results are kept. Repeats
// until the budget runs out.
Solution critical_operation_search(const Instance& instance, Solution start, SearchBudget& budget, Rng& rng,
                                   const MoveTrace& trace = {});

// N6 followed by critical-operation moves under one shared budget.
Solution makespan_search(const Instance& instance, Solution start, long budget, Rng& rng,
                         long* evaluations = nullptr, const MoveTrace& trace = {});

struct SplitRecord {
  int machine;
  int position;
  int job;
  long batch_duration;  // longest member time before the split
  long moved_time;      // processing time of the moved job
  Objectives before;
  Objectives after;
};

// Moves one shorter member of a non-critical batch into a new batch right
// after it whenever the makespan stays unchanged, which lowers TEC by
// (duration - moved) * Ep + moved * Es. Repeats until no split applies.
Solution tec_split(const Instance& instance, Solution start, std::vector<SplitRecord>* log = nullptr,
                   long* evaluations = nullptr, const MoveTrace& trace = {});

} // namespace pbhfs
