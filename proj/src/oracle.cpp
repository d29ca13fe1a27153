#include "pbhfs/oracle.hpp"

#include <functional>

namespace pbhfs {

namespace {

using StageConfig = std::vector<std::vector<Batch>>;  // per machine of one stage

void guard(const Instance& in) {
  if (in.operations() > kOracleMaxOperations)
    throw SizeGuardError("instance has " + std::to_string(in.operations()) +
                         " operations; exhaustive enumeration is limited to " +
                         std::to_string(kOracleMaxOperations));
}

// All ordered partitions of `jobs` (a bitmask) into batches feasible on `machine`.
void ordered_partitions(const Instance& in, int machine, unsigned jobs, std::vector<Batch>& prefix,
                        std::vector<std::vector<Batch>>& out) {
  if (jobs == 0) {
    out.push_back(prefix);
    return;
  }
  for (unsigned sub = jobs; sub != 0; sub = (sub - 1) & jobs) {
    Batch b;
    for (int i = 0; i < in.jobs(); ++i)
      if (sub >> i & 1U) b.jobs.push_back(i);
    if (in.is_batch_stage(in.stage_of(machine))) {
      if (batch_volume(in, b) > in.capacity(machine)) continue;
    } else if (b.jobs.size() != 1) {
      continue;
    }
    prefix.push_back(std::move(b));
    ordered_partitions(in, machine, jobs & ~sub, prefix, out);
    prefix.pop_back();
  }
}

std::vector<StageConfig> stage_configs(const Instance& in, int stage) {
  const int first = in.first_machine(stage);
  const int count = in.machines_at(stage);
  std::vector<StageConfig> configs;
  std::vector<unsigned> owned(count, 0);

  std::function<void(int)> assign = [&](int job) {
    if (job == in.jobs()) {
      std::vector<StageConfig> partial{StageConfig{}};
      for (int k = 0; k < count; ++k) {
        std::vector<std::vector<Batch>> options;
        std::vector<Batch> prefix;
        ordered_partitions(in, first + k, owned[k], prefix, options);
        std::vector<StageConfig> next;
        for (const auto& cfg : partial)
          for (const auto& opt : options) {
            StageConfig c = cfg;
            c.push_back(opt);
            next.push_back(std::move(c));
          }
        partial = std::move(next);
      }
      for (auto& c : partial) configs.push_back(std::move(c));
      return;
    }
    for (int k = 0; k < count; ++k) {
      if (!in.eligible(job, first + k)) continue;
      owned[k] |= 1U << job;
      assign(job + 1);
      owned[k] &= ~(1U << job);
    }
  };
  assign(0);
  return configs;
}

template <typename Visit>
void for_each_schedule(const Instance& in, Visit&& visit) {
  guard(in);
  std::vector<std::vector<StageConfig>> per_stage;
  for (int j = 0; j < in.stages(); ++j) per_stage.push_back(stage_configs(in, j));

  Schedule s = Schedule::empty(in);
  std::function<void(int)> rec = [&](int stage) {
    if (stage == in.stages()) {
      visit(s);
      return;
    }
    for (const auto& cfg : per_stage[stage]) {
      for (int k = 0; k < in.machines_at(stage); ++k) s.machines[in.first_machine(stage) + k] = cfg[k];
      rec(stage + 1);
    }
  };
  rec(0);
}

} // namespace

std::vector<Objectives> enumerate_pareto_oracle(const Instance& in) {
  std::vector<Objectives> front;
  for_each_schedule(in, [&](const Schedule& s) {
    const Objectives o = decode(in, s).objectives;
    for (const auto& f : front)
      if (weakly_dominates(f, o)) return;
    std::erase_if(front, [&](const Objectives& f) { return dominates(o, f); });
    front.push_back(o);
  });
  return nondominated(std::move(front));
}

std::vector<Schedule> enumerate_schedules(const Instance& in) {
  std::vector<Schedule> all;
  for_each_schedule(in, [&](const Schedule& s) { all.push_back(s); });
  return all;
}

} // namespace pbhfs
