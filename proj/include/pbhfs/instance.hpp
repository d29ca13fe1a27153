#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace pbhfs {

struct InstanceMeta {
  std::uint64_t seed = 0;
  std::string generator_version;
  bool operator==(const InstanceMeta&) const = default;
};

// A hybrid flow shop in which any stage may consist of parallel batch
// machines. Machines are numbered globally, stage by stage; a job's
// processing time of 0 on a machine marks it ineligible there.
class Instance {
public:
  using Meta = InstanceMeta;

  Instance() = default;

  // `capacities[j][k]` is the capacity of the k-th machine at stage j and
  // `proc_time[i][j][k]` the time of job i at stage j on that machine.
  Instance(std::vector<bool> batch_stage,
           std::vector<std::vector<int>> capacities,
           std::vector<int> job_sizes,
           const std::vector<std::vector<std::vector<int>>>& proc_time,
           double power_load, double power_idle, Meta meta = {});

  int jobs() const noexcept { return static_cast<int>(job_sizes_.size()); }
  int stages() const noexcept { return static_cast<int>(batch_stage_.size()); }
  int machines() const noexcept { return static_cast<int>(machine_stage_.size()); }
  int operations() const noexcept { return jobs() * stages(); }

  bool is_batch_stage(int stage) const { return batch_stage_.at(stage); }
  int stage_of(int machine) const { return machine_stage_.at(machine); }
  int first_machine(int stage) const { return stage_first_.at(stage); }
  int machines_at(int stage) const { return stage_first_.at(stage + 1) - stage_first_.at(stage); }
  // Position of a machine within its own stage.
  int local_index(int machine) const { return machine - first_machine(stage_of(machine)); }

  int capacity(int machine) const { return capacity_.at(machine); }
  int job_size(int job) const { return job_sizes_.at(job); }
  int proc_time(int job, int machine) const { return pt_[job * machines() + machine]; }
  bool eligible(int job, int machine) const { return proc_time(job, machine) > 0; }
  // Global ids of the machines at `stage` on which `job` may run.
  std::vector<int> eligible_machines(int job, int stage) const;

  double power_load() const noexcept { return power_load_; }
  double power_idle() const noexcept { return power_idle_; }
  const Meta& meta() const noexcept { return meta_; }

  // Throws ValidationError naming the first offending field.
  void validate() const;

  bool operator==(const Instance&) const = default;

private:
  std::vector<bool> batch_stage_;
  std::vector<int> stage_first_{0};
  std::vector<int> machine_stage_;
  std::vector<int> capacity_;
  std::vector<int> job_sizes_;
  std::vector<int> pt_;
  double power_load_ = 0.0;
  double power_idle_ = 0.0;
  Meta meta_;
};

struct GeneratorParams {
  int jobs = 20;
  int stages = 3;
  int max_machines_per_stage = 3;
  double batch_probability = 0.5;
  std::uint64_t seed = 1;
};

inline constexpr const char* kGeneratorVersion = "pbhfs-gen/1";

// Random instance following the benchmark distributions: machines per stage
// uniform in [1, max], capacities in [10, 15], job sizes in [1, 10] and
// processing times in [1, 30] drawn per machine.
Instance generate_instance(const GeneratorParams& params);

nlohmann::json to_json(const Instance& instance);
// Parses and validates.
Instance instance_from_json(const nlohmann::json& doc);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance, const std::filesystem::path& path);

} // namespace pbhfs
