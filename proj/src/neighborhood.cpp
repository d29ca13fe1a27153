#include "pbhfs/neighborhood.hpp"

#include <algorithm>
#include <cassert>
#include <tuple>

namespace pbhfs {

Solution evaluate(const Instance& in, Schedule schedule) {
  Objectives o = decode(in, schedule).objectives;
  return {std::move(schedule), o};
}

const char* move_kind_name(MoveKind kind) {
  switch (kind) {
    case MoveKind::n6: return "n6";
    case MoveKind::insertion: return "insertion";
    case MoveKind::recombination: return "recombination";
    case MoveKind::split: return "split";
  }
  return "?";
}

namespace {

void insert_sorted(Batch& b, int job) {
  b.jobs.insert(std::upper_bound(b.jobs.begin(), b.jobs.end(), job), job);
}

void emit(const MoveTrace& trace, MoveKind kind, int machine, int position, int op, const Objectives& from,
          const Objectives& to, bool accepted) {
  if (!trace) return;
  trace({kind, machine, position, op, to.makespan - from.makespan, to.tec - from.tec, accepted});
}

// Longest member of a batch on `machine` (first one on ties).
int longest_member(const Instance& in, int machine, const Batch& b) {
  int best = b.jobs.front();
  for (int job : b.jobs)
    if (in.proc_time(job, machine) > in.proc_time(best, machine)) best = job;
  return best;
}

InsertionTarget score_batch(const Instance& in, const Schedule& d, const DisjunctiveGraph& g,
                            const DetachedLabels& v, int job, int machine, int position) {
  const int stage = in.stage_of(machine);
  const Batch& b = d.machines[machine][position];
  const int u = op_index(in, longest_member(in, machine, b), stage);
  const long fu = g.head(u), tu = g.tail(u), pu = g.weight(u);
  const long pv = in.proc_time(job, machine);
  InsertionTarget t;
  t.machine = machine;
  t.position = position;
  t.bv = std::max(0L, fu - v.head) + std::max(0L, pu - pv) + std::max(0L, tu - v.tail);
  t.paper_bv = std::max(0L, fu - v.head) + std::max({0L, pu - pv, tu - v.tail});
  t.through = v.head + pv + v.tail + t.bv;
  t.estimate = std::max(g.makespan(), t.through);
  return t;
}

void move_batch(std::vector<Batch>& batches, int from, int to) {
  Batch b = std::move(batches[from]);
  batches.erase(batches.begin() + from);
  batches.insert(batches.begin() + to, std::move(b));
}

} // namespace

Detached detach(const Instance& in, const Schedule& s, int job, int stage) {
  Detached d{s, {}, false};
  for (int m = in.first_machine(stage); m < in.first_machine(stage + 1); ++m) {
    auto& batches = d.schedule.machines[m];
    for (int p = 0; p < static_cast<int>(batches.size()); ++p) {
      auto& jobs = batches[p].jobs;
      auto it = std::find(jobs.begin(), jobs.end(), job);
      if (it == jobs.end()) continue;
      jobs.erase(it);
      d.from = {m, p};
      if (jobs.empty()) {
        batches.erase(batches.begin() + p);
        d.batch_erased = true;
      }
      return d;
    }
  }
  throw InfeasibleEncoding(Constraint::assignment,
                           "operation of job " + std::to_string(job) + " at stage " + std::to_string(stage) +
                               " is not in the schedule");
}

std::vector<InsertionTarget> batch_targets(const Instance& in, const Schedule& d, const DisjunctiveGraph& g,
                                           int job, int stage) {
  const DetachedLabels v = detached_labels(in, g, d, job, stage);
  std::vector<InsertionTarget> out;
  for (int m : in.eligible_machines(job, stage))
    for (int p = 0; p < static_cast<int>(d.machines[m].size()); ++p)
      if (can_join(in, m, d.machines[m][p], job)) out.push_back(score_batch(in, d, g, v, job, m, p));
  return out;
}

std::vector<InsertionTarget> new_batch_targets(const Instance& in, const Schedule& d, const DisjunctiveGraph& g,
                                               int job, int stage) {
  const DetachedLabels v = detached_labels(in, g, d, job, stage);
  std::vector<InsertionTarget> out;
  for (int m : in.eligible_machines(job, stage)) {
    const auto& batches = d.machines[m];
    const int nb = static_cast<int>(batches.size());
    for (int p = 0; p <= nb; ++p) {
      long prev_end = 0, next_tail = 0;
      if (p > 0) {
        const int u = op_index(in, batches[p - 1].jobs.front(), stage);
        prev_end = g.head(u) + batch_duration(in, m, batches[p - 1]);
      }
      if (p < nb) {
        const int u = op_index(in, batches[p].jobs.front(), stage);
        next_tail = batch_duration(in, m, batches[p]) + g.tail(u);
      }
      InsertionTarget t;
      t.machine = m;
      t.position = p;
      t.new_batch = true;
      t.through = std::max(v.head, prev_end) + in.proc_time(job, m) + std::max(v.tail, next_tail);
      t.estimate = std::max(g.makespan(), t.through);
      out.push_back(t);
    }
  }
  return out;
}

InsertionTarget choose_insertion(const Instance& in, const Schedule& d, const DisjunctiveGraph& g, int job,
                                 int stage) {
  auto targets = batch_targets(in, d, g, job, stage);
  if (!targets.empty())
    return *std::min_element(targets.begin(), targets.end(), [](const auto& a, const auto& b) {
      return std::tie(a.through, a.machine, a.position) < std::tie(b.through, b.machine, b.position);
    });
  targets = new_batch_targets(in, d, g, job, stage);
  assert(!targets.empty());
  return *std::min_element(targets.begin(), targets.end(), [](const auto& a, const auto& b) {
    return std::tie(a.estimate, a.through, a.machine, a.position) <
           std::tie(b.estimate, b.through, b.machine, b.position);
  });
}

Schedule apply_insertion(const Schedule& d, const InsertionTarget& t, int job) {
  Schedule s = d;
  auto& batches = s.machines[t.machine];
  if (t.new_batch)
    batches.insert(batches.begin() + t.position, Batch{{job}});
  else
    insert_sorted(batches[t.position], job);
  return s;
}

Schedule batch_insertion(const Instance& in, const Schedule& s, int op) {
  const int job = op / in.stages(), stage = op % in.stages();
  const Detached d = detach(in, s, job, stage);
  const DisjunctiveGraph g = DisjunctiveGraph::build(in, d.schedule);
  return apply_insertion(d.schedule, choose_insertion(in, d.schedule, g, job, stage), job);
}

std::vector<PullCandidate> pull_candidates(const Instance& in, const Schedule& s, int machine, int position) {
  assert(position >= 1 && position < static_cast<int>(s.machines[machine].size()));
  const int stage = in.stage_of(machine);
  const Batch& into = s.machines[machine][position - 1];
  std::vector<PullCandidate> out;
  for (int job : s.machines[machine][position].jobs) {
    if (!can_join(in, machine, into, job)) continue;
    const Detached d = detach(in, s, job, stage);
    const DisjunctiveGraph g = DisjunctiveGraph::build(in, d.schedule);
    const DetachedLabels v = detached_labels(in, g, d.schedule, job, stage);
    const InsertionTarget t = score_batch(in, d.schedule, g, v, job, machine, position - 1);
    out.push_back({job, t.estimate, t.through});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.rv, a.through, a.job) < std::tie(b.rv, b.through, b.job);
  });
  return out;
}

Schedule apply_pull(const Schedule& s, int machine, int position, int job) {
  Schedule out = s;
  auto& batches = out.machines[machine];
  auto& from = batches[position].jobs;
  from.erase(std::find(from.begin(), from.end(), job));
  insert_sorted(batches[position - 1], job);
  if (from.empty()) batches.erase(batches.begin() + position);
  return out;
}

Schedule batch_recombination(const Instance& in, const Schedule& s, int op) {
  const int job = op / in.stages(), stage = op % in.stages();
  Detached d = detach(in, s, job, stage);
  const int m = d.from.machine;
  if (s.machines[m].size() < 2) return s;

  Schedule& work = d.schedule;
  long current = DisjunctiveGraph::build(in, work).makespan();
  int nb = static_cast<int>(work.machines[m].size());
  int t = std::min(d.from.position, nb - 1);
  while (nb >= 2 && t >= 1) {
    const auto cands = pull_candidates(in, work, m, t);
    if (cands.empty() || cands.front().rv > current) {
      --t;  // blocked: move one batch forward
      continue;
    }
    work = apply_pull(work, m, t, cands.front().job);
    current = cands.front().rv;
    nb = static_cast<int>(work.machines[m].size());
    t = std::min(t, nb - 1);
  }
  const DisjunctiveGraph g = DisjunctiveGraph::build(in, work);
  return apply_insertion(work, choose_insertion(in, work, g, job, stage), job);
}

Solution n6_search(const Instance& in, Solution cur, SearchBudget& budget, const MoveTrace& trace) {
  while (!budget.exhausted()) {
    bool improved = false;
    const DisjunctiveGraph g = DisjunctiveGraph::build(in, cur.schedule);
    const auto blocks = critical_blocks(in, g, cur.schedule);
    for (int m = 0; m < in.machines() && !improved; ++m) {
      for (const CriticalBlock& blk : blocks[m]) {
        if (blk.size() < 2) continue;
        std::vector<std::pair<int, int>> moves;  // (from, to)
        for (int q = blk.first + 1; q <= blk.last; ++q) moves.emplace_back(q, blk.first);
        for (int q = blk.first + 1; q <= blk.last; ++q) moves.emplace_back(blk.first, q);
        for (auto [from, to] : moves) {
          if (budget.exhausted()) return cur;
          Schedule cand = cur.schedule;
          move_batch(cand.machines[m], from, to);
          Solution next = evaluate(in, std::move(cand));
          ++budget.used;
          const bool accept = dominates(next.objectives, cur.objectives);
          emit(trace, MoveKind::n6, m, from, -1, cur.objectives, next.objectives, accept);
          if (accept) {
            cur = std::move(next);
            improved = true;
            break;
          }
        }
        if (improved) break;
      }
    }
    if (!improved) break;
  }
  return cur;
}

Solution critical_operation_search(const Instance& in, Solution cur, SearchBudget& budget, Rng& rng,
                                   const MoveTrace& trace) {
  auto critical_at = [&](int stage) {
    const DisjunctiveGraph g = DisjunctiveGraph::build(in, cur.schedule);
    std::vector<int> ops;
    for (int op : g.critical_operations())
      if (op % in.stages() == stage) ops.push_back(op);
    return ops;
  };
  auto attempt = [&](MoveKind kind, int stage) {
    const auto ops = critical_at(stage);
    if (ops.empty()) return;
    const int op = ops[std::uniform_int_distribution<std::size_t>(0, ops.size() - 1)(rng)];
    Schedule cand = kind == MoveKind::insertion ? batch_insertion(in, cur.schedule, op)
                                                : batch_recombination(in, cur.schedule, op);
    ++budget.used;
    if (cand == cur.schedule) {
      emit(trace, kind, -1, -1, op, cur.objectives, cur.objectives, false);
      return;
    }
    Solution next = evaluate(in, std::move(cand));
    const bool accept = dominates(next.objectives, cur.objectives);
    emit(trace, kind, -1, -1, op, cur.objectives, next.objectives, accept);
    if (accept) cur = std::move(next);
  };

  while (!budget.exhausted()) {
    for (int stage = 0; stage < in.stages() && !budget.exhausted(); ++stage) attempt(MoveKind::insertion, stage);
    for (int stage = 0; stage < in.stages() && !budget.exhausted(); ++stage)
      attempt(MoveKind::recombination, stage);
  }
  return cur;
}

Solution makespan_search(const Instance& in, Solution start, long limit, Rng& rng, long* evaluations,
                         const MoveTrace& trace) {
  SearchBudget budget{limit, 0};
  Solution s = n6_search(in, std::move(start), budget, trace);
  s = critical_operation_search(in, std::move(s), budget, rng, trace);
  if (evaluations) *evaluations += budget.used;
  return s;
}

Solution tec_split(const Instance& in, Solution cur, std::vector<SplitRecord>* log, long* evaluations,
                   const MoveTrace& trace) {
  const double ep = in.power_load(), es = in.power_idle();
  for (bool applied = true; applied;) {
    applied = false;
    const DisjunctiveGraph g = DisjunctiveGraph::build(in, cur.schedule);
    for (int m = 0; m < in.machines() && !applied; ++m) {
      const int stage = in.stage_of(m);
      const auto& batches = cur.schedule.machines[m];
      for (int p = 0; p < static_cast<int>(batches.size()) && !applied; ++p) {
        const Batch& b = batches[p];
        if (b.jobs.size() < 2) continue;
        bool critical = false;
        for (int job : b.jobs) critical = critical || g.is_critical(op_index(in, job, stage));
        if (critical) continue;
        const long dur = batch_duration(in, m, b);
        const long start = g.head(op_index(in, b.jobs.front(), stage));

        std::vector<int> movable;
        for (int job : b.jobs)
          if (in.proc_time(job, m) < dur && start + dur <= g.latest(op_index(in, job, stage)))
            movable.push_back(job);
        auto gain = [&](int job) {
          const long pt = in.proc_time(job, m);
          return static_cast<double>(dur - pt) * ep + static_cast<double>(pt) * es;
        };
        std::stable_sort(movable.begin(), movable.end(), [&](int a, int b2) { return gain(a) > gain(b2); });

        for (int job : movable) {
          if (gain(job) <= 0) continue;
          Schedule cand = cur.schedule;
          auto& jobs = cand.machines[m][p].jobs;
          jobs.erase(std::find(jobs.begin(), jobs.end(), job));
          cand.machines[m].insert(cand.machines[m].begin() + p + 1, Batch{{job}});
          Solution next = evaluate(in, std::move(cand));
          if (evaluations) ++*evaluations;
          const bool accept = next.objectives.makespan == cur.objectives.makespan;
          emit(trace, MoveKind::split, m, p, op_index(in, job, stage), cur.objectives, next.objectives, accept);
          if (!accept) continue;
          assert(next.objectives.tec < cur.objectives.tec);
          if (log) log->push_back({m, p, job, dur, in.proc_time(job, m), cur.objectives, next.objectives});
          cur = std::move(next);
          applied = true;
          break;
        }
      }
    }
  }
  return cur;
}

} // namespace pbhfs
