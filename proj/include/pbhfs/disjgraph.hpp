#pragma once

#include <ostream>
#include <vector>

#include "pbhfs/instance.hpp"
#include "pbhfs/schedule.hpp"

namespace pbhfs {

enum class ArcSet { process, machine, batch, terminal };

struct Arc {
  int from;
  int to;
  ArcSet set;
};

// Batch-aware disjunctive graph of a (possibly partial) schedule.
//
// Nodes are operations (op_index) plus a source and a sink. Arc sets:
//   process  O(i,j-1) -> O(i,j)
//   machine  every member of a batch -> every member of the next batch on
//            the same machine
//   batch    for O(i,j): every member of the previous-stage batch of each
//            batch-mate of O(i,j) (itself included) -> O(i,j)
// Node weight is the operation's processing time on its machine. Operations
// missing from the schedule become isolated zero-weight nodes, which is how
// the graph with one operation removed is formed.
class DisjunctiveGraph {
public:
  static DisjunctiveGraph build(const Instance& instance, const Schedule& schedule);

  int operations() const noexcept { return ops_; }
  int source() const noexcept { return ops_; }
  int sink() const noexcept { return ops_ + 1; }
  int nodes() const noexcept { return ops_ + 2; }

  bool assigned(int op) const { return loc_[op].assigned(); }
  const Location& location(int op) const { return loc_[op]; }
  long weight(int v) const { return pt_[v]; }
  // Longest path length from the source to v (earliest start).
  long head(int v) const { return head_[v]; }
  // Longest path length from the end of v to the sink, excluding v's weight.
  long tail(int v) const { return tail_[v]; }
  // Latest start that keeps the makespan.
  long latest(int v) const { return makespan_ - pt_[v] - tail_[v]; }
  long makespan() const noexcept { return makespan_; }

  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  const std::vector<int>& successors(int v) const { return succ_[v]; }
  const std::vector<int>& predecessors(int v) const { return pred_[v]; }
  const std::vector<int>& topological_order() const noexcept { return topo_; }

  // Operations v with head + weight + tail == makespan, ascending op index.
  std::vector<int> critical_operations() const;
  bool is_critical(int op) const {
    return assigned(op) && head_[op] + pt_[op] + tail_[op] == makespan_;
  }

  // "from to TAG" lines with TAG in {A, E, B, T}; nodes named O<job>_<stage>, s, e.
  void write_edge_list(std::ostream& out) const;

private:
  int ops_ = 0;
  int stages_ = 1;
  std::vector<Location> loc_;
  std::vector<long> pt_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::vector<int> topo_;
  std::vector<long> head_;
  std::vector<long> tail_;
  long makespan_ = 0;
};

// Run of consecutive critical batches on one machine, positions inclusive.
struct CriticalBlock {
  int machine;
  int first;
  int last;
  int size() const noexcept { return last - first + 1; }
  bool operator==(const CriticalBlock&) const = default;
};

// A batch is critical when it holds at least one critical operation. Every
// maximal run is returned (singletons included), grouped by machine.
std::vector<std::vector<CriticalBlock>> critical_blocks(const Instance& instance,
                                                        const DisjunctiveGraph& graph,
                                                        const Schedule& schedule);

// Labels of an operation that is absent from the graph's schedule: the end of
// its previous-stage batch and the tail of its next-stage batch (measured
// from that batch's start).
struct DetachedLabels {
  long head = 0;
  long tail = 0;
};

DetachedLabels detached_labels(const Instance& instance, const DisjunctiveGraph& graph,
                               const Schedule& schedule, int job, int stage);

} // namespace pbhfs
