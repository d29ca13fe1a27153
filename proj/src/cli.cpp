#include "pbhfs/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pbhfs/error.hpp"
#include "pbhfs/experiment.hpp"
#include "pbhfs/instance.hpp"
#include "pbhfs/metrics.hpp"
#include "pbhfs/moead.hpp"
#include "pbhfs/schedule.hpp"

namespace fs = std::filesystem;

namespace pbhfs {

namespace {

struct SolverFlags {
  long runtime_ms = 0;
  long budget_evals = 0;
  int popsize = SolverParams{}.popsize;
  int tabu_l = SolverParams{}.rotation_threshold;
  int neighbors_t = SolverParams{}.neighbors;
  double alpha = SolverParams{}.alpha;
  double gamma = SolverParams{}.gamma;

  void attach(CLI::App* app) {
    app->add_option("--runtime-ms", runtime_ms, "Wall-clock limit in milliseconds");
    app->add_option("--budget-evals", budget_evals, "Schedule evaluation budget (deterministic)");
    app->add_option("--popsize", popsize, "Population size")->capture_default_str();
    app->add_option("--tabu-l", tabu_l, "Weight rotation threshold L")->capture_default_str();
    app->add_option("--neighbors-t", neighbors_t, "Neighbourhood size T")->capture_default_str();
    app->add_option("--alpha", alpha, "Q-learning rate")->capture_default_str();
    app->add_option("--gamma", gamma, "Q-learning discount")->capture_default_str();
  }

  SolverParams params(Variant variant) const {
    SolverParams p;
    p.runtime_ms = runtime_ms;
    p.budget_evals = budget_evals;
    p.popsize = popsize;
    p.rotation_threshold = tabu_l;
    p.neighbors = std::min(neighbors_t, popsize);
    p.alpha = alpha;
    p.gamma = gamma;
    p.variant = variant;
    if (runtime_ms == 0 && budget_evals == 0) throw ParameterError("set --runtime-ms or --budget-evals");
    p.validate();
    return p;
  }
};

std::string stem(const fs::path& p) { return p.stem().string(); }

int cmd_gen(bool suite, const GeneratorParams& gp, const fs::path& out) {
  if (suite) {
    fs::create_directories(out);
    for (const auto& e : benchmark_suite(gp.seed)) write_instance(generate_instance(e.params), out / (e.name + ".json"));
    std::cout << "wrote 45 instances to " << out.string() << '\n';
    return 0;
  }
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_instance(generate_instance(gp), out);
  std::cout << "wrote " << out.string() << '\n';
  return 0;
}

int cmd_solve(const fs::path& instance_path, std::uint64_t seed, const std::string& variant, const SolverFlags& flags,
              const fs::path& out, const std::string& trace_path) {
  const Instance in = read_instance(instance_path);
  const SolverParams params = flags.params(parse_variant(variant));

  std::ofstream trace_file;
  MoveTrace trace;
  if (!trace_path.empty()) {
    trace_file.open(trace_path);
    if (!trace_file) throw Error("cannot write " + trace_path);
    trace_file << "kind,machine,position,op,delta_makespan,delta_tec,accepted\n";
    trace = [&](const MoveRecord& r) {
      trace_file << move_kind_name(r.kind) << ',' << r.machine << ',' << r.position << ',' << r.op << ','
                 << r.delta_makespan << ',' << format_number(r.delta_tec) << ',' << (r.accepted ? 1 : 0) << '\n';
    };
  }

  const RunResult result = solve(in, params, seed, trace);
  fs::create_directories(out / "schedules");
  {
    std::ofstream report(out / "report.json");
    report << result.report.dump(2) << '\n';
  }
  std::vector<Objectives> front;
  for (std::size_t k = 0; k < result.archive.size(); ++k) {
    front.push_back(result.archive[k].objectives);
    char name[32];
    std::snprintf(name, sizeof name, "%03zu.json", k);
    write_schedule(result.archive[k].schedule, out / "schedules" / name);
  }
  write_front_csv(front, out / "front.csv");
  for (const auto& o : front) std::cout << o.makespan << ',' << format_number(o.tec) << '\n';
  return 0;
}

int cmd_check(const fs::path& instance_path, const fs::path& schedule_path, const std::string& timing_path) {
  const Instance in = read_instance(instance_path);
  const Schedule s = read_schedule(schedule_path);
  FeasibilityReport report;
  Decoded decoded;
  try {
    decoded = decode_times(in, s);
    report = check_feasibility(in, s, decoded);
  } catch (const InfeasibleEncoding& e) {
    report.violated = e.constraint();
    report.detail = e.what();
  }
  if (!report.ok()) {
    std::cerr << "infeasible: " << constraint_name(report.violated) << ": " << report.detail << '\n';
    return constraint_exit_code(report.violated);
  }
  if (!timing_path.empty()) {
    std::ofstream timing(timing_path);
    if (!timing) throw Error("cannot write " + timing_path);
    write_timing_csv(timing, in, decoded);
  }
  std::cout << "feasible makespan=" << decoded.objectives.makespan << " tec=" << format_number(decoded.objectives.tec)
            << '\n';
  return 0;
}

int cmd_metrics(const std::vector<std::string>& paths, const std::string& out_path) {
  std::vector<Front> fronts;
  for (const auto& p : paths) {
    fronts.push_back(to_front(read_front_csv(p)));
    if (fronts.back().empty()) throw ValidationError(p, "empty front");
  }
  const auto scores = score_fronts(fronts);
  std::ostringstream csv;
  csv << "front,points,hv,igd,spread\n";
  for (std::size_t k = 0; k < paths.size(); ++k)
    csv << paths[k] << ',' << fronts[k].size() << ',' << format_number(scores[k].hv) << ','
        << format_number(scores[k].igd) << ',' << (scores[k].spread ? format_number(*scores[k].spread) : "") << '\n';
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << csv.str();
  }
  return 0;
}

int cmd_compare(const std::vector<std::string>& instance_args, const std::vector<std::string>& variants, int seeds,
                std::uint64_t base_seed, const SolverFlags& flags, int workers, const fs::path& out) {
  CompareConfig cfg;
  std::vector<fs::path> files;
  for (const auto& arg : instance_args) {
    if (fs::is_directory(arg)) {
      std::vector<fs::path> inside;
      for (const auto& e : fs::directory_iterator(arg))
        if (e.path().extension() == ".json") inside.push_back(e.path());
      std::sort(inside.begin(), inside.end());
      files.insert(files.end(), inside.begin(), inside.end());
    } else {
      files.emplace_back(arg);
    }
  }
  if (files.empty()) throw ParameterError("no instances given");
  for (const auto& f : files) {
    cfg.instance_names.push_back(stem(f));
    cfg.instances.push_back(read_instance(f));
  }
  if (!variants.empty()) {
    cfg.variants.clear();
    for (const auto& v : variants) cfg.variants.push_back(parse_variant(v));
  }
  cfg.seeds = seeds;
  cfg.base_seed = base_seed;
  cfg.params = flags.params(Variant::amoead);
  cfg.workers = workers;

  const CompareResult res = run_compare(cfg);
  write_compare(cfg, res, out);
  if (cfg.variants.size() >= 2) {
    std::cout << std::left << std::setw(10) << "variant" << std::setw(12) << "hv_rank" << std::setw(12) << "igd_rank"
              << "spread_rank\n";
    for (std::size_t v = 0; v < cfg.variants.size(); ++v)
      std::cout << std::setw(10) << variant_name(cfg.variants[v]) << std::setw(12) << res.hv_ranks.mean_ranks[v]
                << std::setw(12) << res.igd_ranks.mean_ranks[v] << res.spread_ranks.mean_ranks[v] << '\n';
  }
  std::cout << "results in " << out.string() << '\n';
  return 0;
}

} // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Bi-objective (makespan, energy) scheduling of hybrid flow shops with parallel batch stages"};
  app.require_subcommand(1);

  GeneratorParams gp;
  bool suite = false;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a random instance or the 45-instance suite");
  gen->add_flag("--suite", suite, "Write the full benchmark grid into --out");
  gen->add_option("--jobs", gp.jobs, "Number of jobs")->capture_default_str();
  gen->add_option("--stages", gp.stages, "Number of stages")->capture_default_str();
  gen->add_option("--max-machines", gp.max_machines_per_stage, "Maximum machines per stage")->capture_default_str();
  gen->add_option("--batch-prob", gp.batch_probability, "Probability that a stage is a batch stage")
      ->capture_default_str();
  gen->add_option("--seed", gp.seed, "Seed (first seed of the suite)")->capture_default_str();
  gen->add_option("--out", gen_out, "Instance file, or directory with --suite")->required();

  std::string instance, variant = "AMOEAD", out, trace;
  std::uint64_t seed = 1;
  SolverFlags flags;
  auto* solve_cmd = app.add_subcommand("solve", "Run the solver on one instance");
  solve_cmd->add_option("--instance", instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  solve_cmd->add_option("--variant", variant, "AMOEAD, AMOEAD1, AMOEAD2 or AMOEAD3")->capture_default_str();
  solve_cmd->add_option("--out", out, "Output directory")->required();
  solve_cmd->add_option("--trace", trace, "Write one CSV line per evaluated move");
  flags.attach(solve_cmd);

  std::string schedule, timing;
  auto* check = app.add_subcommand("check", "Validate a schedule against an instance");
  check->add_option("--instance", instance, "Instance file")->required()->check(CLI::ExistingFile);
  check->add_option("--schedule", schedule, "Schedule file")->required()->check(CLI::ExistingFile);
  check->add_option("--timing", timing, "Write per-operation start/end times as CSV");

  std::vector<std::string> front_paths;
  std::string metrics_out;
  auto* metrics = app.add_subcommand("metrics", "Score fronts against each other");
  metrics->add_option("--front", front_paths, "Front CSV (makespan,tec); repeat for each")
      ->required()
      ->check(CLI::ExistingFile);
  metrics->add_option("--out", metrics_out, "CSV output file (default stdout)");

  std::vector<std::string> instances, variants;
  int seeds = 10, workers = 1;
  SolverFlags compare_flags;
  auto* compare = app.add_subcommand("compare", "Run variants x instances x seeds and rank them");
  compare->add_option("--instance", instances, "Instance files or directories")->required()->check(CLI::ExistingPath);
  compare->add_option("--variant", variants, "Variants to compare (default all four)");
  compare->add_option("--seeds", seeds, "Repetitions per instance")->capture_default_str();
  compare->add_option("--seed", seed, "First seed")->capture_default_str();
  compare->add_option("--workers", workers, "Concurrent runs")->capture_default_str();
  compare->add_option("--out", out, "Output directory")->required();
  compare_flags.attach(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) return cmd_gen(suite, gp, gen_out);
    if (*solve_cmd) return cmd_solve(instance, seed, variant, flags, out, trace);
    if (*check) return cmd_check(instance, schedule, timing);
    if (*metrics) return cmd_metrics(front_paths, metrics_out);
    if (*compare) return cmd_compare(instances, variants, seeds, seed, compare_flags, workers, out);
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 3;
  } catch (const ParameterError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

} // namespace pbhfs
