#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "pbhfs/cli.hpp"
#include "pbhfs/experiment.hpp"
#include "pbhfs/oracle.hpp"

using namespace pbhfs;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "pbhfs");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pbhfs_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("gen writes single instances and the suite") {
  const fs::path dir = scratch("gen");
  CHECK(run({"gen", "--jobs", "7", "--stages", "2", "--seed", "4", "--out", (dir / "a.json").string()}) == 0);
  CHECK(run({"gen", "--jobs", "7", "--stages", "2", "--seed", "4", "--out", (dir / "b.json").string()}) == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(read_instance(dir / "a.json").jobs() == 7);

  CHECK(run({"gen", "--suite", "--seed", "1", "--out", (dir / "suite").string()}) == 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir / "suite")) files += e.path().extension() == ".json";
  CHECK(files == 45);
  const Instance big = read_instance(dir / "suite" / "N60_S5_M5.json");
  CHECK(big.jobs() == 60);
  CHECK(big.stages() == 5);
}

TEST_CASE("solve, then check the archive schedules") {
  const fs::path dir = scratch("solve");
  write_instance(fixtures::tiny_a(), dir / "tiny.json");
  REQUIRE(run({"solve", "--instance", (dir / "tiny.json").string(), "--seed", "3", "--budget-evals", "3000", "--out",
               (dir / "run").string(), "--trace", (dir / "trace.csv").string()}) == 0);
  CHECK(read_front_csv(dir / "run" / "front.csv") == enumerate_pareto_oracle(fixtures::tiny_a()));
  CHECK(fs::exists(dir / "run" / "report.json"));
  CHECK(slurp(dir / "trace.csv").rfind("kind,machine,position,op,delta_makespan,delta_tec,accepted\n", 0) == 0);
  CHECK(run({"check", "--instance", (dir / "tiny.json").string(), "--schedule",
             (dir / "run" / "schedules" / "000.json").string(), "--timing", (dir / "timing.csv").string()}) == 0);
  CHECK(slurp(dir / "timing.csv").rfind("job,stage,machine,batch,start,end\n", 0) == 0);
}

TEST_CASE("identical budgeted solves write identical reports") {
  const fs::path dir = scratch("determinism");
  write_instance(fixtures::small_instance(3, 8, 3, 3), dir / "i.json");
  for (const char* out : {"r1", "r2"})
    REQUIRE(run({"solve", "--instance", (dir / "i.json").string(), "--seed", "9", "--budget-evals", "2000",
                 "--variant", "AMOEAD3", "--popsize", "20", "--tabu-l", "3", "--neighbors-t", "4", "--alpha", "0.2",
                 "--gamma", "0.8", "--out", (dir / out).string()}) == 0);
  CHECK(slurp(dir / "r1" / "report.json") == slurp(dir / "r2" / "report.json"));
  CHECK(slurp(dir / "r1" / "front.csv") == slurp(dir / "r2" / "front.csv"));
  const auto report = nlohmann::json::parse(slurp(dir / "r1" / "report.json"));
  CHECK(report["params"]["popsize"] == 20);
  CHECK(report["params"]["L"] == 3);
  CHECK(report["params"]["variant"] == "AMOEAD3");
}

TEST_CASE("check reports the violated constraint through the exit code") {
  const fs::path dir = scratch("check");
  // sizes 6 and 5 cannot share the capacity-10 machine
  const Instance in({true, false}, {{10}, {10}}, {6, 5}, {{{3}, {2}}, {{5}, {4}}}, 2.0, 1.0);
  write_instance(in, dir / "i.json");
  write_schedule(fixtures::tiny_a_joint(), dir / "bad.json");
  CHECK(run({"check", "--instance", (dir / "i.json").string(), "--schedule", (dir / "bad.json").string()}) ==
        constraint_exit_code(Constraint::capacity));

  Schedule missing = Schedule::empty(in);
  missing.machines[0] = {Batch{{0}}, Batch{{1}}};
  missing.machines[1] = {Batch{{0}}};
  write_schedule(missing, dir / "missing.json");
  CHECK(run({"check", "--instance", (dir / "i.json").string(), "--schedule", (dir / "missing.json").string()}) ==
        constraint_exit_code(Constraint::assignment));

  Schedule ok = Schedule::empty(in);
  ok.machines[0] = {Batch{{0}}, Batch{{1}}};
  ok.machines[1] = {Batch{{0}}, Batch{{1}}};
  write_schedule(ok, dir / "ok.json");
  CHECK(run({"check", "--instance", (dir / "i.json").string(), "--schedule", (dir / "ok.json").string()}) == 0);
}

TEST_CASE("bad input fails with a nonzero status") {
  const fs::path dir = scratch("errors");
  CHECK(run({"solve", "--instance", (dir / "nope.json").string(), "--budget-evals", "10", "--out", dir.string()}) != 0);
  write_instance(fixtures::tiny_a(), dir / "tiny.json");
  CHECK(run({"solve", "--instance", (dir / "tiny.json").string(), "--out", dir.string()}) != 0);
  CHECK(run({"solve", "--instance", (dir / "tiny.json").string(), "--budget-evals", "10", "--variant", "X", "--out",
             dir.string()}) != 0);
  CHECK(run({"solve", "--instance", (dir / "tiny.json").string(), "--budget-evals", "10", "--popsize", "1", "--out",
             dir.string()}) != 0);
  CHECK(run({"frobnicate"}) != 0);
  CHECK(run({}) != 0);
  std::ofstream(dir / "broken.json") << "{\"n_jobs\": 2}";
  CHECK(run({"solve", "--instance", (dir / "broken.json").string(), "--budget-evals", "10", "--out", dir.string()}) !=
        0);
}

TEST_CASE("metrics scores fronts against each other") {
  const fs::path dir = scratch("metrics");
  write_front_csv({{1, 3}, {3, 1}}, dir / "a.csv");
  write_front_csv({{2, 2}}, dir / "b.csv");
  REQUIRE(run({"metrics", "--front", (dir / "a.csv").string(), "--front", (dir / "b.csv").string(), "--out",
               (dir / "m.csv").string()}) == 0);
  const std::string text = slurp(dir / "m.csv");
  CHECK(text.rfind("front,points,hv,igd,spread\n", 0) == 0);
  CHECK(text.find("a.csv,2,1.29") != std::string::npos);
}

TEST_CASE("compare is reproducible byte for byte") {
  const fs::path dir = scratch("compare");
  write_instance(fixtures::small_instance(1, 6, 2, 2), dir / "one.json");
  write_instance(fixtures::small_instance(2, 6, 2, 2), dir / "two.json");
  for (const char* out : {"c1", "c2"})
    REQUIRE(run({"compare", "--instance", dir.string(), "--seeds", "2", "--budget-evals", "800", "--popsize", "10",
                 "--workers", "2", "--out", (dir / out).string()}) == 0);
  CHECK(slurp(dir / "c1" / "metrics.csv") == slurp(dir / "c2" / "metrics.csv"));
  CHECK(slurp(dir / "c1" / "ranks.csv") == slurp(dir / "c2" / "ranks.csv"));
  const std::string metrics = slurp(dir / "c1" / "metrics.csv");
  int rows = 0;
  for (char c : metrics) rows += c == '\n';
  CHECK(rows == 1 + 2 * 4 * 2);
  const std::string ranks = slurp(dir / "c1" / "ranks.csv");
  CHECK(ranks.rfind("metric,AMOEAD,AMOEAD1,AMOEAD2,AMOEAD3,chi_square,best\n", 0) == 0);
  CHECK(fs::exists(dir / "c1" / "fronts" / "one_AMOEAD_1.csv"));
}
