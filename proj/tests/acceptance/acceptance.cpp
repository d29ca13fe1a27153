// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// `acceptance --only 3,7` restricts the run to the listed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "fixtures.hpp"
#include "pbhfs/cli.hpp"
#include "pbhfs/controller.hpp"
#include "pbhfs/experiment.hpp"
#include "pbhfs/metrics.hpp"
#include "pbhfs/moead.hpp"
#include "pbhfs/neighborhood.hpp"
#include "pbhfs/oracle.hpp"

using namespace pbhfs;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

bool feasible(const Instance& in, const Schedule& s) {
  return check_structure(in, s).ok() && check_feasibility(in, s, decode(in, s)).ok();
}

long realized(const Instance& in, const Schedule& s) { return decode(in, s).objectives.makespan; }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome oracle_optimality() {
  const int n = 20;
  int exact = 0, contained = 0, instances = 0;
  std::uint64_t seed = 0;
  while (instances < n) {
    const Instance in = fixtures::tiny_instance(1000 + seed++);
    if (in.operations() < 3) continue;  // keep instances with something to decide
    ++instances;
    const auto oracle = enumerate_pareto_oracle(in);
    SolverParams p;
    p.runtime_ms = 2000;
    const RunResult r = solve(in, p, seed);
    std::vector<Objectives> got;
    bool inside = true;
    for (const auto& s : r.archive) {
      got.push_back(s.objectives);
      bool covered = false;
      for (const auto& o : oracle) covered = covered || weakly_dominates(o, s.objectives);
      inside = inside && covered && feasible(in, s.schedule);
    }
    exact += got == oracle;
    contained += inside;
  }
  return {exact * 100 >= 95 * n && contained == n,
          std::to_string(exact) + "/" + std::to_string(n) + " fronts exact, " + std::to_string(contained) + "/" +
              std::to_string(n) + " contained"};
}

Outcome reinsertion_feasibility() {
  std::mt19937_64 rng(2024);
  int infeasible = 0, cycles = 0, runs = 0;
  for (int k = 0; k < 10000; ++k) {
    const int idx = k % 50;
    const Instance in = fixtures::small_instance(300 + idx, 6 + idx % 10, 2 + idx % 3, 2 + idx % 3);
    const Schedule s = fixtures::random_schedule(in, rng);
    const int op = std::uniform_int_distribution<int>(0, in.operations() - 1)(rng);
    try {
      const Schedule r = k % 2 == 0 ? batch_insertion(in, s, op) : batch_recombination(in, s, op);
      infeasible += !feasible(in, r);
      DisjunctiveGraph::build(in, r);
    } catch (const std::logic_error&) {
      ++cycles;
    }
    ++runs;
  }
  return {infeasible == 0 && cycles == 0,
          std::to_string(runs) + " cycles, " + std::to_string(infeasible) + " infeasible, " + std::to_string(cycles) +
              " graph cycles"};
}

Outcome argmin_agreement() {
  std::mt19937_64 rng(77);
  int bv_trials = 0, bv_ok = 0, rv_trials = 0, rv_ok = 0;
  std::uint64_t seed = 1;
  while (bv_trials < 1000 || rv_trials < 1000) {
    const Instance in = fixtures::tiny_instance(5000 + seed++);
    const Schedule s = fixtures::random_schedule(in, rng);
    if (bv_trials < 1000) {
      const int op = std::uniform_int_distribution<int>(0, in.operations() - 1)(rng);
      const int job = op / in.stages(), stage = op % in.stages();
      const Detached d = detach(in, s, job, stage);
      const auto g = DisjunctiveGraph::build(in, d.schedule);
      const auto targets = batch_targets(in, d.schedule, g, job, stage);
      if (!targets.empty()) {
        long best = std::numeric_limits<long>::max();
        for (const auto& t : targets) best = std::min(best, realized(in, apply_insertion(d.schedule, t, job)));
        const InsertionTarget chosen = choose_insertion(in, d.schedule, g, job, stage);
        bv_ok += !chosen.new_batch && realized(in, apply_insertion(d.schedule, chosen, job)) == best;
        ++bv_trials;
      }
    }
    if (rv_trials < 1000) {
      for (int m = 0; m < in.machines() && rv_trials < 1000; ++m)
        for (int p = 1; p < static_cast<int>(s.machines[m].size()) && rv_trials < 1000; ++p) {
          const auto cands = pull_candidates(in, s, m, p);
          if (cands.empty()) continue;
          long best = std::numeric_limits<long>::max();
          for (const auto& c : cands) best = std::min(best, realized(in, apply_pull(s, m, p, c.job)));
          rv_ok += realized(in, apply_pull(s, m, p, cands.front().job)) == best;
          ++rv_trials;
        }
    }
  }
  return {bv_ok == bv_trials && rv_ok == rv_trials,
          "insertion " + std::to_string(bv_ok) + "/" + std::to_string(bv_trials) + ", pull " + std::to_string(rv_ok) +
              "/" + std::to_string(rv_trials)};
}

Outcome split_law() {
  std::mt19937_64 rng(4);
  int splits = 0, exact = 0;
  for (int trial = 0; splits < 1000 && trial < 100000; ++trial) {
    const Instance in = fixtures::small_instance(7000 + trial, 8 + trial % 8, 2 + trial % 3, 3);
    const Solution start = evaluate(in, fixtures::random_schedule(in, rng));
    std::vector<SplitRecord> log;
    const Solution out = tec_split(in, start, &log);
    bool run_ok = out.objectives.makespan == start.objectives.makespan && feasible(in, out.schedule);
    for (const SplitRecord& r : log) {
      const double law = static_cast<double>(r.batch_duration - r.moved_time) * in.power_load() +
                         static_cast<double>(r.moved_time) * in.power_idle();
      exact += run_ok && r.after.makespan == r.before.makespan && r.before.tec - r.after.tec == law;
      ++splits;
    }
  }
  return {splits >= 1000 && exact == splits, std::to_string(exact) + "/" + std::to_string(splits) + " splits exact"};
}

Outcome critical_path() {
  int schedules = 0, ok = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance in = fixtures::tiny_instance(9000 + seed);
    for (const Schedule& s : enumerate_schedules(in)) {
      const auto g = DisjunctiveGraph::build(in, s);
      bool good = g.makespan() == fixtures::brute_longest_path(g) && g.makespan() == realized(in, s);
      for (int op = 0; op < in.operations() && good; ++op)
        good = g.is_critical(op) == (fixtures::brute_longest_through(g, op) == g.makespan());
      ok += good;
      ++schedules;
    }
  }
  return {ok == schedules, std::to_string(ok) + "/" + std::to_string(schedules) + " schedules agree"};
}

Outcome controller() {
  bool good = std::abs(QController::epsilon(0, 1) - 1.0) < 1e-12 &&
              std::abs(QController::epsilon(1, 1) - 1.0 / 3.0) < 1e-12;
  for (int t = 1; t <= 10000; ++t) good = good && QController::epsilon(t, 10000) <= QController::epsilon(t - 1, 10000);

  QController first(0.1, 0.9);
  good = good && first.update(2, 1, -3, -4) == 3 && std::abs(first.q(2, 1) - 1.0) < 1e-12;

  QController c(0.1, 0.9);
  double q[4][5] = {};
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> sign(-1, 1);
  int s = 2;
  double worst = 0;
  for (int k = 0; k < 5000; ++k) {
    const int a = c.select_action(s, k, 5000, rng);
    const double dm = sign(rng), dt = sign(rng);
    const int next = dm < 0 ? (dt < 0 ? 3 : 0) : (dt < 0 ? 1 : 2);
    double best = q[next][0];
    for (int b = 1; b < 5; ++b) best = std::max(best, q[next][b]);
    q[s][a] += 0.1 * (QController::kReward[next] + 0.9 * best - q[s][a]);
    good = good && c.update(s, a, dm, dt) == next;
    s = next;
    for (int st = 0; st < 4; ++st)
      for (int b = 0; b < 5; ++b) worst = std::max(worst, std::abs(c.q(st, b) - q[st][b]));
  }
  good = good && worst <= 1e-12;
  return {good, "max Q deviation " + fmt("%.3g", worst)};
}

Outcome metrics() {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(0, 1);
  int within = 0;
  double worst_z = 0;
  const int fronts = 100, samples = 1000000;
  for (int k = 0; k < fronts; ++k) {
    Front f;
    const int n = 1 + static_cast<int>(u(rng) * 15);
    for (int i = 0; i < n; ++i) {
      const double t = u(rng);
      f.push_back({t, (1 - t) * (0.5 + u(rng))});
    }
    const Point2 ref{1.1, 1.7};
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
      const double a = u(rng) * ref[0], b = u(rng) * ref[1];
      for (const auto& p : f)
        if (p[0] <= a && p[1] <= b) {
          ++hits;
          break;
        }
    }
    const double box = ref[0] * ref[1];
    const double frac = static_cast<double>(hits) / samples;
    const double sigma = box * std::sqrt(frac * (1 - frac) / samples);
    const double z = std::abs(hypervolume(f, ref) - box * frac) / sigma;
    worst_z = std::max(worst_z, z);
    within += z <= 3.0;
  }
  const Front f{{1, 3}, {2, 2}, {3, 1}};
  const bool igd_zero = igd(f, f) == 0.0;
  const auto sp = spread({{0, 10}, {1, 9}, {10, 0}});
  const bool spread_ok = sp && std::abs(*sp - 0.8) <= 1e-9;
  return {within == fronts && igd_zero && spread_ok,
          std::to_string(within) + "/" + std::to_string(fronts) + " HV within 3 sigma (worst " + fmt("%.2f", worst_z) +
              "), IGD(F,F)=0 " + (igd_zero ? "yes" : "no") + ", spread 0.8 " + (spread_ok ? "yes" : "no")};
}

Outcome ablation() {
  CompareConfig cfg;
  std::uint64_t seed = 42;
  for (int n : {10, 15, 20})
    for (auto [s, m] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{3, 3}}) {
      cfg.instance_names.push_back("N" + std::to_string(n) + "_S" + std::to_string(s) + "_M" + std::to_string(m));
      cfg.instances.push_back(fixtures::small_instance(seed++, n, s, m));
    }
  cfg.seeds = 5;
  cfg.params.runtime_ms = 10000;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  const CompareResult res = run_compare(cfg);

  const auto& ranks = res.hv_ranks.mean_ranks;
  bool best = true;
  std::string detail = "HV ranks";
  for (std::size_t v = 0; v < cfg.variants.size(); ++v) {
    detail += std::string(" ") + variant_name(cfg.variants[v]) + "=" + fmt("%.3f", ranks[v]);
    if (v > 0) best = best && ranks[0] > ranks[v];
  }
  bool majority = true;
  detail += "; instances with AMOEAD mean HV >= variant:";
  for (std::size_t v = 1; v < cfg.variants.size(); ++v) {
    int wins = 0;
    for (std::size_t i = 0; i < cfg.instances.size(); ++i) wins += res.mean_hv[0][i] >= res.mean_hv[v][i];
    majority = majority && wins * 10 >= 6 * static_cast<int>(cfg.instances.size());
    detail += " " + std::to_string(wins) + "/" + std::to_string(cfg.instances.size());
  }
  return {best && majority, detail};
}

Outcome decoder_feasibility() {
  std::mt19937_64 rng(99);
  long total = 0, ok = 0;
  for (const auto& e : benchmark_suite(1)) {
    const Instance in = generate_instance(e.params);
    for (int k = 0; k < 1000; ++k) {
      const Schedule s = fixtures::random_schedule(in, rng);
      ok += check_feasibility(in, s, decode(in, s)).ok();
      ++total;
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " encodings feasible"};
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "pbhfs_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  GeneratorParams gp;
  gp.jobs = 20;
  gp.stages = 3;
  gp.max_machines_per_stage = 3;
  gp.seed = 5;
  write_instance(generate_instance(gp), dir / "i.json");
  auto run = [&](const std::string& out) {
    std::vector<std::string> args{"pbhfs", "solve", "--instance", (dir / "i.json").string(), "--seed", "17",
                                  "--budget-evals", "30000", "--out", (dir / out).string()};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream sink;
    auto* old = std::cout.rdbuf(sink.rdbuf());
    const int rc = run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    return rc;
  };
  if (run("a") != 0 || run("b") != 0) return {false, "solve failed"};
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(dir / "a" / "report.json"), b = slurp(dir / "b" / "report.json");
  return {!a.empty() && a == b, std::to_string(a.size()) + "-byte reports " + (a == b ? "identical" : "differ")};
}

} // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle optimality at tiny scale", oracle_optimality},
      {"reinsertion feasibility", reinsertion_feasibility},
      {"insertion and pull argmin agreement", argmin_agreement},
      {"energy split law", split_law},
      {"critical path correctness", critical_path},
      {"controller decay and Q recurrence", controller},
      {"metric oracles", metrics},
      {"ablation direction", ablation},
      {"decoder feasibility", decoder_feasibility},
      {"determinism", determinism},
  };

  std::set<int> only;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--only") {
      std::stringstream ss(argv[i + 1]);
      for (std::string tok; std::getline(ss, tok, ',');) only.insert(std::stoi(tok));
    }

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ". " << criteria[k].first << ": " << o.detail << " ("
              << fmt("%.1f", secs) << " s)" << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
