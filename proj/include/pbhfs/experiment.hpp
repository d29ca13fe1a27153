#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pbhfs/instance.hpp"
#include "pbhfs/metrics.hpp"
#include "pbhfs/moead.hpp"

namespace pbhfs {

struct SuiteEntry {
  std::string name;
  GeneratorParams params;
};

// N in {20,...,60} by 10, S and max machines in {3,4,5}, batch probability
// 0.5: 45 instances with seeds base_seed, base_seed+1, ...
std::vector<SuiteEntry> benchmark_suite(std::uint64_t base_seed);

struct CompareConfig {
  std::vector<std::string> instance_names;
  std::vector<Instance> instances;
  std::vector<Variant> variants{Variant::amoead, Variant::amoead1, Variant::amoead2, Variant::amoead3};
  int seeds = 10;
  std::uint64_t base_seed = 1;  // run r uses base_seed + r
  SolverParams params;          // variant is overridden per run
  int workers = 1;
};

struct RunRecord {
  int instance = 0;
  int variant = 0;  // index into CompareConfig::variants
  int seed_index = 0;
  std::uint64_t seed = 0;
  std::vector<Objectives> front;
  FrontScore score;
};

struct CompareResult {
  std::vector<RunRecord> runs;  // instance-major, then variant, then seed
  // [variant][instance] means over seeds
  std::vector<std::vector<double>> mean_hv, mean_igd, mean_spread;
  FriedmanResult hv_ranks, igd_ranks, spread_ranks;
};

// Runs the grid on a pool of `workers` threads; scoring and ranking happen
// afterwards in grid order so the result does not depend on scheduling.
CompareResult run_compare(const CompareConfig& config);

// metrics.csv (one row per run), ranks.csv (mean ranks per metric) and
// fronts/<instance>_<variant>_<seed>.csv.
void write_compare(const CompareConfig& config, const CompareResult& result, const std::filesystem::path& out);

// Shortest round-trip decimal form.
std::string format_number(double x);

void write_front_csv(const std::vector<Objectives>& front, const std::filesystem::path& path);
std::vector<Objectives> read_front_csv(const std::filesystem::path& path);

} // namespace pbhfs
