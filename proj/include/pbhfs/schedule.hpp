#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbhfs/error.hpp"
#include "pbhfs/instance.hpp"
#include "pbhfs/objectives.hpp"

namespace pbhfs {

// Jobs processed together on one machine. On discrete stages a batch holds
// exactly one job.
struct Batch {
  std::vector<int> jobs;
  bool operator==(const Batch&) const = default;
  auto operator<=>(const Batch&) const = default;
};

// The solution encoding: for every (global) machine, its batches in
// processing order. A job's operation at stage j is implied by the stage of
// the machine it appears on.
struct Schedule {
  std::vector<std::vector<Batch>> machines;

  static Schedule empty(const Instance& instance) {
    return Schedule{std::vector<std::vector<Batch>>(instance.machines())};
  }
  bool operator==(const Schedule&) const = default;
};

struct Location {
  int machine = -1;
  int position = -1;
  bool assigned() const noexcept { return machine >= 0; }
  bool operator==(const Location&) const = default;
};

// Operation index used throughout: job * stages + stage.
inline int op_index(const Instance& in, int job, int stage) { return job * in.stages() + stage; }

// Location of every operation (unassigned ones stay default). Throws
// InfeasibleEncoding if an operation appears twice.
std::vector<Location> locate_operations(const Instance& instance, const Schedule& schedule);

int batch_volume(const Instance& instance, const Batch& batch);
int batch_duration(const Instance& instance, int machine, const Batch& batch);
// Whether `job` can be added to `batch` on `machine` (capacity on batch
// stages, single occupancy on discrete ones, eligibility).
bool can_join(const Instance& instance, int machine, const Batch& batch, int job);

enum class Constraint {
  none,
  assignment,   // each operation on exactly one machine of its stage
  eligibility,  // processing time > 0 on the chosen machine
  precedence,   // start after previous-stage completion
  capacity,     // batch volume within machine capacity
  single_job,   // discrete stages hold one job per batch
  overlap,      // adjacent batches on a machine do not overlap
  batch_start,  // members of a batch share one start time
  duration,     // completion = batch start + longest member time
  makespan,     // makespan equals the last completion
  energy,       // TEC equals load plus idle energy
  empty_batch,
};

const char* constraint_name(Constraint c);
// Distinct nonzero process exit code per violated constraint (CLI `check`).
int constraint_exit_code(Constraint c);

class InfeasibleEncoding : public Error {
public:
  InfeasibleEncoding(Constraint c, const std::string& detail)
      : Error(std::string(constraint_name(c)) + ": " + detail), constraint_(c) {}
  Constraint constraint() const noexcept { return constraint_; }

private:
  Constraint constraint_;
};

struct FeasibilityReport {
  Constraint violated = Constraint::none;
  std::string detail;
  bool ok() const noexcept { return violated == Constraint::none; }
};

struct OperationTime {
  long start = 0;
  long end = 0;
  int machine = -1;
  int position = -1;
};

struct Decoded {
  int stages = 0;
  std::vector<OperationTime> ops;  // indexed by op_index
  Objectives objectives;
  long load_units = 0;             // sum over batches of duration * member count
  long idle_units = 0;             // sum over machines of makespan - busy time

  const OperationTime& at(int job, int stage) const { return ops[job * stages + stage]; }
};

// Structural invariants of an encoding: complete unique assignment,
// eligibility, capacity, single-job discrete batches, no empty batches.
FeasibilityReport check_structure(const Instance& instance, const Schedule& schedule);

// Semi-active timing: every batch starts as soon as its machine is free and
// all members have finished the previous stage. Throws InfeasibleEncoding on
// structural violations.
Decoded decode(const Instance& instance, const Schedule& schedule);

// Timing only; requires a complete unique assignment but tolerates capacity,
// eligibility and occupancy breaches so that the checker can report them.
Decoded decode_times(const Instance& instance, const Schedule& schedule);

// Independent verification of decoded times against the model constraints.
FeasibilityReport check_feasibility(const Instance& instance, const Schedule& schedule,
                                    const Decoded& decoded);

nlohmann::json to_json(const Schedule& schedule);
Schedule schedule_from_json(const nlohmann::json& doc);
Schedule read_schedule(const std::filesystem::path& path);
void write_schedule(const Schedule& schedule, const std::filesystem::path& path);

// job,stage,machine,batch,start,end rows.
void write_timing_csv(std::ostream& out, const Instance& instance, const Decoded& decoded);

} // namespace pbhfs
