#include "pbhfs/disjgraph.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pbhfs {

DisjunctiveGraph DisjunctiveGraph::build(const Instance& in, const Schedule& s) {
  DisjunctiveGraph g;
  g.ops_ = in.operations();
  g.stages_ = in.stages();
  g.loc_ = locate_operations(in, s);
  const int n = g.nodes();
  g.pt_.assign(n, 0);
  for (int i = 0; i < in.jobs(); ++i)
    for (int j = 0; j < in.stages(); ++j) {
      const int v = op_index(in, i, j);
      if (g.loc_[v].assigned()) g.pt_[v] = in.proc_time(i, g.loc_[v].machine);
    }

  // A pair may appear once per arc set; adjacency lists hold it once.
  std::vector<std::vector<std::pair<int, ArcSet>>> seen(n);
  auto add = [&](int from, int to, ArcSet set) {
    auto& list = seen[from];
    if (std::find(list.begin(), list.end(), std::pair{to, set}) != list.end()) return;
    list.emplace_back(to, set);
    g.arcs_.push_back({from, to, set});
  };
  auto batch_of = [&](int op) -> const Batch& {
    const Location& l = g.loc_[op];
    return s.machines[l.machine][l.position];
  };

  for (int i = 0; i < in.jobs(); ++i)
    for (int j = 1; j < in.stages(); ++j) {
      const int prev = op_index(in, i, j - 1);
      const int cur = op_index(in, i, j);
      if (g.loc_[prev].assigned() && g.loc_[cur].assigned()) add(prev, cur, ArcSet::process);
    }

  for (int m = 0; m < in.machines(); ++m) {
    const int stage = in.stage_of(m);
    const auto& batches = s.machines[m];
    for (std::size_t p = 1; p < batches.size(); ++p)
      for (int a : batches[p - 1].jobs)
        for (int b : batches[p].jobs) add(op_index(in, a, stage), op_index(in, b, stage), ArcSet::machine);
  }

  for (int i = 0; i < in.jobs(); ++i)
    for (int j = 1; j < in.stages(); ++j) {
      const int cur = op_index(in, i, j);
      if (!g.loc_[cur].assigned()) continue;
      for (int mate : batch_of(cur).jobs) {
        const int prev = op_index(in, mate, j - 1);
        if (!g.loc_[prev].assigned()) continue;
        for (int q : batch_of(prev).jobs) add(op_index(in, q, j - 1), cur, ArcSet::batch);
      }
    }

  std::vector<int> indeg(n, 0), outdeg(n, 0);
  for (const Arc& a : g.arcs_) {
    ++outdeg[a.from];
    ++indeg[a.to];
  }
  for (int v = 0; v < g.ops_; ++v) {
    if (!g.loc_[v].assigned()) continue;
    if (indeg[v] == 0) g.arcs_.push_back({g.source(), v, ArcSet::terminal});
    if (outdeg[v] == 0) g.arcs_.push_back({v, g.sink(), ArcSet::terminal});
  }
  int expected = 2;
  for (int v = 0; v < g.ops_; ++v) expected += g.loc_[v].assigned() ? 1 : 0;
  if (expected == 2) g.arcs_.push_back({g.source(), g.sink(), ArcSet::terminal});

  g.succ_.assign(n, {});
  g.pred_.assign(n, {});
  for (const Arc& a : g.arcs_) {
    auto& out = g.succ_[a.from];
    if (std::find(out.begin(), out.end(), a.to) != out.end()) continue;
    out.push_back(a.to);
    g.pred_[a.to].push_back(a.from);
  }

  // Kahn's algorithm; isolated (unassigned) nodes are left out.
  std::vector<int> remaining(n);
  for (int v = 0; v < n; ++v) remaining[v] = static_cast<int>(g.pred_[v].size());
  std::vector<int> ready{g.source()};
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    g.topo_.push_back(v);
    for (int w : g.succ_[v])
      if (--remaining[w] == 0) ready.push_back(w);
  }
  if (static_cast<int>(g.topo_.size()) != expected) throw std::logic_error("disjunctive graph contains a cycle");

  g.head_.assign(n, 0);
  for (int v : g.topo_)
    for (int w : g.succ_[v]) g.head_[w] = std::max(g.head_[w], g.head_[v] + g.pt_[v]);
  g.tail_.assign(n, 0);
  for (auto it = g.topo_.rbegin(); it != g.topo_.rend(); ++it)
    for (int w : g.succ_[*it]) g.tail_[*it] = std::max(g.tail_[*it], g.pt_[w] + g.tail_[w]);
  g.makespan_ = g.head_[g.sink()];
  return g;
}

std::vector<int> DisjunctiveGraph::critical_operations() const {
  std::vector<int> out;
  for (int v = 0; v < ops_; ++v)
    if (is_critical(v)) out.push_back(v);
  return out;
}

void DisjunctiveGraph::write_edge_list(std::ostream& out) const {
  auto name = [&](int v) -> std::string {
    if (v == source()) return "s";
    if (v == sink()) return "e";
    return "O" + std::to_string(v / stages_) + "_" + std::to_string(v % stages_);
  };
  auto tag = [](ArcSet set) {
    switch (set) {
      case ArcSet::process: return 'A';
      case ArcSet::machine: return 'E';
      case ArcSet::batch: return 'B';
      case ArcSet::terminal: return 'T';
    }
    return '?';
  };
  for (const Arc& a : arcs_) out << name(a.from) << ' ' << name(a.to) << ' ' << tag(a.set) << '\n';
}

std::vector<std::vector<CriticalBlock>> critical_blocks(const Instance& in, const DisjunctiveGraph& g,
                                                        const Schedule& s) {
  std::vector<std::vector<CriticalBlock>> out(in.machines());
  for (int m = 0; m < in.machines(); ++m) {
    const int stage = in.stage_of(m);
    const auto& batches = s.machines[m];
    int run_start = -1;
    for (int p = 0; p <= static_cast<int>(batches.size()); ++p) {
      bool critical = false;
      if (p < static_cast<int>(batches.size()))
        for (int job : batches[p].jobs) critical = critical || g.is_critical(op_index(in, job, stage));
      if (critical && run_start < 0) run_start = p;
      if (!critical && run_start >= 0) {
        out[m].push_back({m, run_start, p - 1});
        run_start = -1;
      }
    }
  }
  return out;
}

DetachedLabels detached_labels(const Instance& in, const DisjunctiveGraph& g, const Schedule& s, int job,
                               int stage) {
  DetachedLabels l;
  if (stage > 0) {
    const Location& p = g.location(op_index(in, job, stage - 1));
    assert(p.assigned());
    for (int q : s.machines[p.machine][p.position].jobs) {
      const int v = op_index(in, q, stage - 1);
      l.head = std::max(l.head, g.head(v) + g.weight(v));
    }
  }
  if (stage + 1 < in.stages()) {
    const Location& n = g.location(op_index(in, job, stage + 1));
    assert(n.assigned());
    for (int q : s.machines[n.machine][n.position].jobs) {
      const int v = op_index(in, q, stage + 1);
      l.tail = std::max(l.tail, g.weight(v) + g.tail(v));
    }
  }
  return l;
}

} // namespace pbhfs
