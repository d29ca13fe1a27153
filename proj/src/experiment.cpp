#include "pbhfs/experiment.hpp"

#include <atomic>
#include <charconv>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "pbhfs/error.hpp"

namespace pbhfs {

std::vector<SuiteEntry> benchmark_suite(std::uint64_t base_seed) {
  std::vector<SuiteEntry> suite;
  std::uint64_t seed = base_seed;
  for (int n = 20; n <= 60; n += 10)
    for (int s = 3; s <= 5; ++s)
      for (int m = 3; m <= 5; ++m) {
        GeneratorParams p;
        p.jobs = n;
        p.stages = s;
        p.max_machines_per_stage = m;
        p.batch_probability = 0.5;
        p.seed = seed++;
        suite.push_back({"N" + std::to_string(n) + "_S" + std::to_string(s) + "_M" + std::to_string(m), p});
      }
  return suite;
}

std::string format_number(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void write_front_csv(const std::vector<Objectives>& front, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "makespan,tec\n";
  for (const auto& o : front) out << o.makespan << ',' << format_number(o.tec) << '\n';
}

std::vector<Objectives> read_front_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::vector<Objectives> front;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || (row == 1 && line.rfind("makespan", 0) == 0)) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError(path.string() + ":" + std::to_string(row), "expected makespan,tec");
    try {
      front.push_back({std::stol(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    } catch (const std::logic_error&) {
      throw ValidationError(path.string() + ":" + std::to_string(row), "malformed number");
    }
  }
  return front;
}

namespace {

double mean_of(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return xs.empty() ? std::numeric_limits<double>::quiet_NaN() : s / static_cast<double>(xs.size());
}

} // namespace

CompareResult run_compare(const CompareConfig& cfg) {
  if (cfg.instances.size() != cfg.instance_names.size()) throw ParameterError("instance names do not match instances");
  if (cfg.instances.empty() || cfg.variants.empty()) throw ParameterError("compare needs instances and variants");
  if (cfg.seeds < 1) throw ParameterError("compare needs at least one seed");
  if (cfg.workers < 1) throw ParameterError("workers must be >= 1");

  const int ni = static_cast<int>(cfg.instances.size());
  const int nv = static_cast<int>(cfg.variants.size());
  CompareResult res;
  for (int i = 0; i < ni; ++i)
    for (int v = 0; v < nv; ++v)
      for (int r = 0; r < cfg.seeds; ++r)
        res.runs.push_back({i, v, r, cfg.base_seed + static_cast<std::uint64_t>(r), {}, {}});

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < res.runs.size();) {
      RunRecord& run = res.runs[k];
      try {
        SolverParams p = cfg.params;
        p.variant = cfg.variants[run.variant];
        const RunResult out = solve(cfg.instances[run.instance], p, run.seed);
        for (const auto& s : out.archive) run.front.push_back(s.objectives);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < cfg.workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  res.mean_hv.assign(nv, std::vector<double>(ni));
  res.mean_igd = res.mean_spread = res.mean_hv;
  const std::size_t per_instance = static_cast<std::size_t>(nv) * cfg.seeds;
  for (int i = 0; i < ni; ++i) {
    std::vector<Front> fronts;
    for (std::size_t k = 0; k < per_instance; ++k) fronts.push_back(to_front(res.runs[i * per_instance + k].front));
    const auto scores = score_fronts(fronts);
    for (std::size_t k = 0; k < per_instance; ++k) res.runs[i * per_instance + k].score = scores[k];
    for (int v = 0; v < nv; ++v) {
      std::vector<double> hv, ig, sp;
      for (int r = 0; r < cfg.seeds; ++r) {
        const FrontScore& s = scores[static_cast<std::size_t>(v) * cfg.seeds + r];
        hv.push_back(s.hv);
        ig.push_back(s.igd);
        // a single-point front has no spacing to measure; count it as the worst uniformity
        sp.push_back(s.spread.value_or(1.0));
      }
      res.mean_hv[v][i] = mean_of(hv);
      res.mean_igd[v][i] = mean_of(ig);
      res.mean_spread[v][i] = mean_of(sp);
    }
  }
  if (nv >= 2) {
    res.hv_ranks = friedman_mean_ranks(res.mean_hv, true);
    res.igd_ranks = friedman_mean_ranks(res.mean_igd, false);
    res.spread_ranks = friedman_mean_ranks(res.mean_spread, false);
  }
  return res;
}

void write_compare(const CompareConfig& cfg, const CompareResult& res, const std::filesystem::path& out) {
  std::filesystem::create_directories(out / "fronts");
  std::ofstream metrics(out / "metrics.csv");
  if (!metrics) throw Error("cannot write " + (out / "metrics.csv").string());
  metrics << "instance,variant,seed,points,hv,igd,spread\n";
  for (const RunRecord& r : res.runs) {
    const std::string name = cfg.instance_names[r.instance];
    const std::string variant = variant_name(cfg.variants[r.variant]);
    metrics << name << ',' << variant << ',' << r.seed << ',' << r.front.size() << ',' << format_number(r.score.hv)
            << ',' << format_number(r.score.igd) << ',' << (r.score.spread ? format_number(*r.score.spread) : "")
            << '\n';
    write_front_csv(r.front, out / "fronts" / (name + "_" + variant + "_" + std::to_string(r.seed) + ".csv"));
  }

  std::ofstream ranks(out / "ranks.csv");
  if (!ranks) throw Error("cannot write " + (out / "ranks.csv").string());
  ranks << "metric";
  for (Variant v : cfg.variants) ranks << ',' << variant_name(v);
  ranks << ",chi_square,best\n";
  if (cfg.variants.size() < 2) return;
  auto row = [&](const char* metric, const FriedmanResult& f) {
    ranks << metric;
    for (double m : f.mean_ranks) ranks << ',' << format_number(m);
    ranks << ',' << format_number(f.chi_square) << ',' << variant_name(cfg.variants[f.best]) << '\n';
  };
  row("hv", res.hv_ranks);
  row("igd", res.igd_ranks);
  row("spread", res.spread_ranks);
}

} // namespace pbhfs
