#include "pbhfs/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace pbhfs {

using nlohmann::json;

namespace {

std::string where(int machine, int position) {
  return "machine " + std::to_string(machine) + " batch " + std::to_string(position);
}

std::string op_name(int job, int stage) {
  return "O(" + std::to_string(job) + "," + std::to_string(stage) + ")";
}

} // namespace

const char* constraint_name(Constraint c) {
  switch (c) {
    case Constraint::none: return "none";
    case Constraint::assignment: return "assignment";
    case Constraint::eligibility: return "eligibility";
    case Constraint::precedence: return "precedence";
    case Constraint::capacity: return "capacity";
    case Constraint::single_job: return "single-job";
    case Constraint::overlap: return "overlap";
    case Constraint::batch_start: return "batch-start";
    case Constraint::duration: return "duration";
    case Constraint::makespan: return "makespan";
    case Constraint::energy: return "energy";
    case Constraint::empty_batch: return "empty-batch";
  }
  return "unknown";
}

int constraint_exit_code(Constraint c) {
  switch (c) {
    case Constraint::none: return 0;
    case Constraint::assignment: return 12;
    case Constraint::precedence: return 13;
    case Constraint::capacity: return 14;
    case Constraint::single_job: return 15;
    case Constraint::overlap: return 16;
    case Constraint::batch_start: return 17;
    case Constraint::duration: return 18;
    case Constraint::makespan: return 19;
    case Constraint::energy: return 20;
    case Constraint::eligibility: return 21;
    case Constraint::empty_batch: return 22;
  }
  return 1;
}

std::vector<Location> locate_operations(const Instance& in, const Schedule& s) {
  if (static_cast<int>(s.machines.size()) != in.machines())
    throw InfeasibleEncoding(Constraint::assignment,
                             "schedule lists " + std::to_string(s.machines.size()) +
                                 " machines, instance has " + std::to_string(in.machines()));
  std::vector<Location> loc(in.operations());
  for (int m = 0; m < in.machines(); ++m) {
    const int stage = in.stage_of(m);
    for (int p = 0; p < static_cast<int>(s.machines[m].size()); ++p) {
      for (int job : s.machines[m][p].jobs) {
        if (job < 0 || job >= in.jobs())
          throw InfeasibleEncoding(Constraint::assignment,
                                   "unknown job " + std::to_string(job) + " on " + where(m, p));
        Location& l = loc[op_index(in, job, stage)];
        if (l.assigned())
          throw InfeasibleEncoding(Constraint::assignment,
                                   op_name(job, stage) + " appears on " + where(l.machine, l.position) +
                                       " and " + where(m, p));
        l = {m, p};
      }
    }
  }
  return loc;
}

int batch_volume(const Instance& in, const Batch& b) {
  int v = 0;
  for (int job : b.jobs) v += in.job_size(job);
  return v;
}

int batch_duration(const Instance& in, int machine, const Batch& b) {
  int d = 0;
  for (int job : b.jobs) d = std::max(d, in.proc_time(job, machine));
  return d;
}

bool can_join(const Instance& in, int machine, const Batch& b, int job) {
  if (!in.eligible(job, machine)) return false;
  if (!in.is_batch_stage(in.stage_of(machine))) return b.jobs.empty();
  return batch_volume(in, b) + in.job_size(job) <= in.capacity(machine);
}

FeasibilityReport check_structure(const Instance& in, const Schedule& s) {
  std::vector<Location> loc;
  try {
    loc = locate_operations(in, s);
  } catch (const InfeasibleEncoding& e) {
    return {e.constraint(), e.what()};
  }
  for (int i = 0; i < in.jobs(); ++i)
    for (int j = 0; j < in.stages(); ++j)
      if (!loc[op_index(in, i, j)].assigned())
        return {Constraint::assignment, op_name(i, j) + " is not assigned"};
  for (int m = 0; m < in.machines(); ++m) {
    const bool batch_stage = in.is_batch_stage(in.stage_of(m));
    for (int p = 0; p < static_cast<int>(s.machines[m].size()); ++p) {
      const Batch& b = s.machines[m][p];
      if (b.jobs.empty()) return {Constraint::empty_batch, where(m, p) + " is empty"};
      for (int job : b.jobs)
        if (!in.eligible(job, m))
          return {Constraint::eligibility, "job " + std::to_string(job) + " is ineligible on machine " +
                                               std::to_string(m)};
      if (batch_stage) {
        const int v = batch_volume(in, b);
        if (v > in.capacity(m))
          return {Constraint::capacity, where(m, p) + " holds volume " + std::to_string(v) +
                                            " > capacity " + std::to_string(in.capacity(m))};
      } else if (b.jobs.size() != 1) {
        return {Constraint::single_job, where(m, p) + " on a discrete stage holds " +
                                            std::to_string(b.jobs.size()) + " jobs"};
      }
    }
  }
  return {};
}

Decoded decode_times(const Instance& in, const Schedule& s) {
  const std::vector<Location> loc = locate_operations(in, s);
  for (int i = 0; i < in.jobs(); ++i)
    for (int j = 0; j < in.stages(); ++j)
      if (!loc[op_index(in, i, j)].assigned())
        throw InfeasibleEncoding(Constraint::assignment, op_name(i, j) + " is not assigned");

  Decoded d;
  d.stages = in.stages();
  d.ops.resize(in.operations());
  std::vector<long> busy(in.machines(), 0);
  for (int j = 0; j < in.stages(); ++j) {
    for (int m = in.first_machine(j); m < in.first_machine(j + 1); ++m) {
      long ready = 0;
      for (int p = 0; p < static_cast<int>(s.machines[m].size()); ++p) {
        const Batch& b = s.machines[m][p];
        long start = ready;
        if (j > 0)
          for (int job : b.jobs) start = std::max(start, d.at(job, j - 1).end);
        const long dur = batch_duration(in, m, b);
        for (int job : b.jobs) d.ops[op_index(in, job, j)] = {start, start + dur, m, p};
        ready = start + dur;
        busy[m] += dur;
        d.load_units += dur * static_cast<long>(b.jobs.size());
      }
    }
  }
  long cmax = 0;
  for (const auto& op : d.ops) cmax = std::max(cmax, op.end);
  for (int m = 0; m < in.machines(); ++m) d.idle_units += cmax - busy[m];
  d.objectives.makespan = cmax;
  d.objectives.tec = static_cast<double>(d.load_units) * in.power_load() +
                     static_cast<double>(d.idle_units) * in.power_idle();
  return d;
}

Decoded decode(const Instance& in, const Schedule& s) {
  if (FeasibilityReport r = check_structure(in, s); !r.ok()) throw InfeasibleEncoding(r.violated, r.detail);
  return decode_times(in, s);
}

FeasibilityReport check_feasibility(const Instance& in, const Schedule& s, const Decoded& d) {
  if (FeasibilityReport r = check_structure(in, s); !r.ok()) return r;
  if (static_cast<int>(d.ops.size()) != in.operations() || d.stages != in.stages())
    return {Constraint::assignment, "timing table does not cover every operation"};

  long last = 0;
  std::vector<long> busy(in.machines(), 0);
  long load = 0;
  for (int m = 0; m < in.machines(); ++m) {
    const int stage = in.stage_of(m);
    long prev_end = 0;
    for (int p = 0; p < static_cast<int>(s.machines[m].size()); ++p) {
      const Batch& b = s.machines[m][p];
      const long start = d.at(b.jobs.front(), stage).start;
      const long dur = batch_duration(in, m, b);
      for (int job : b.jobs) {
        const OperationTime& t = d.at(job, stage);
        if (t.machine != m || t.position != p)
          return {Constraint::assignment, op_name(job, stage) + " timed on " + where(t.machine, t.position) +
                                              " but encoded on " + where(m, p)};
        if (t.start != start)
          return {Constraint::batch_start, op_name(job, stage) + " starts at " + std::to_string(t.start) +
                                               ", its batch at " + std::to_string(start)};
        if (t.end != start + dur)
          return {Constraint::duration, op_name(job, stage) + " ends at " + std::to_string(t.end) +
                                            ", expected " + std::to_string(start + dur)};
        if (t.start < 0) return {Constraint::precedence, op_name(job, stage) + " starts before time 0"};
        if (stage > 0 && t.start < d.at(job, stage - 1).end)
          return {Constraint::precedence, op_name(job, stage) + " starts at " + std::to_string(t.start) +
                                              " before previous stage ends at " +
                                              std::to_string(d.at(job, stage - 1).end)};
        last = std::max(last, t.end);
      }
      if (p > 0 && start < prev_end)
        return {Constraint::overlap, where(m, p) + " starts at " + std::to_string(start) +
                                         " before " + where(m, p - 1) + " ends at " + std::to_string(prev_end)};
      prev_end = start + dur;
      busy[m] += dur;
      load += dur * static_cast<long>(b.jobs.size());
    }
  }
  if (d.objectives.makespan != last)
    return {Constraint::makespan, "reported makespan " + std::to_string(d.objectives.makespan) +
                                      ", last completion " + std::to_string(last)};
  long idle = 0;
  for (int m = 0; m < in.machines(); ++m) idle += last - busy[m];
  const double tec = static_cast<double>(load) * in.power_load() + static_cast<double>(idle) * in.power_idle();
  if (std::abs(tec - d.objectives.tec) > 1e-9 * std::max(1.0, std::abs(tec)))
    return {Constraint::energy, "reported TEC " + std::to_string(d.objectives.tec) + ", recomputed " +
                                    std::to_string(tec)};
  return {};
}

json to_json(const Schedule& s) {
  json machines = json::array();
  for (const auto& batches : s.machines) {
    json list = json::array();
    for (const auto& b : batches) list.push_back(b.jobs);
    machines.push_back(std::move(list));
  }
  return json{{"machines", std::move(machines)}};
}

Schedule schedule_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("machines") || !doc.at("machines").is_array())
    throw ValidationError("machines", "missing or not an array");
  Schedule s;
  const json& machines = doc.at("machines");
  for (std::size_t m = 0; m < machines.size(); ++m) {
    const std::string name = "machines[" + std::to_string(m) + "]";
    if (!machines[m].is_array()) throw ValidationError(name, "expected an array of batches");
    std::vector<Batch> batches;
    for (std::size_t p = 0; p < machines[m].size(); ++p) {
      const json& b = machines[m][p];
      const std::string bname = name + "[" + std::to_string(p) + "]";
      if (!b.is_array()) throw ValidationError(bname, "expected an array of job ids");
      Batch batch;
      for (const json& job : b) {
        if (!job.is_number_integer()) throw ValidationError(bname, "job ids must be integers");
        batch.jobs.push_back(job.get<int>());
      }
      batches.push_back(std::move(batch));
    }
    s.machines.push_back(std::move(batches));
  }
  return s;
}

Schedule read_schedule(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open schedule file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string(), std::string("malformed document: ") + e.what());
  }
  return schedule_from_json(doc);
}

void write_schedule(const Schedule& schedule, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write schedule file " + path.string());
  out << to_json(schedule).dump() << '\n';
}

void write_timing_csv(std::ostream& out, const Instance& in, const Decoded& d) {
  out << "job,stage,machine,batch,start,end\n";
  for (int i = 0; i < in.jobs(); ++i)
    for (int j = 0; j < in.stages(); ++j) {
      const OperationTime& t = d.at(i, j);
      out << i << ',' << j << ',' << t.machine << ',' << t.position << ',' << t.start << ',' << t.end << '\n';
    }
}

} // namespace pbhfs
