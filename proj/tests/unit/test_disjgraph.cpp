#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "pbhfs/neighborhood.hpp"
#include "pbhfs/oracle.hpp"

using namespace pbhfs;

namespace {

bool has_arc(const DisjunctiveGraph& g, int from, int to, ArcSet set) {
  for (const Arc& a : g.arcs())
    if (a.from == from && a.to == to && a.set == set) return true;
  return false;
}

} // namespace

TEST_CASE("batch arcs and labels on the tiny instance") {
  const Instance in = fixtures::tiny_a();
  const auto g = DisjunctiveGraph::build(in, fixtures::tiny_a_joint());
  const int o11 = op_index(in, 0, 0), o12 = op_index(in, 0, 1);
  const int o21 = op_index(in, 1, 0), o22 = op_index(in, 1, 1);

  CHECK(has_arc(g, o11, o12, ArcSet::batch));
  CHECK(has_arc(g, o21, o12, ArcSet::batch));
  CHECK(has_arc(g, o11, o22, ArcSet::batch));
  CHECK(has_arc(g, o21, o22, ArcSet::batch));
  CHECK(has_arc(g, o11, o12, ArcSet::process));
  CHECK(has_arc(g, o12, o22, ArcSet::machine));
  CHECK_FALSE(has_arc(g, o11, o21, ArcSet::machine));

  CHECK(g.head(o12) == 5);
  CHECK(g.head(o22) == 7);
  CHECK(g.makespan() == 11);
  CHECK(g.head(g.sink()) == 11);
  CHECK(g.tail(o11) == 6);
  CHECK(g.tail(o21) == 6);
  CHECK(g.head(o11) + g.weight(o11) + g.tail(o11) == 9);

  CHECK(g.critical_operations() == std::vector<int>{o12, o21, o22});
  CHECK_FALSE(g.is_critical(o11));
}

TEST_CASE("single operation graph") {
  const Instance in({false}, {{10}}, {3}, {{{7}}}, 2.0, 1.0);
  Schedule s = Schedule::empty(in);
  s.machines[0].push_back(Batch{{0}});
  const auto g = DisjunctiveGraph::build(in, s);
  CHECK(g.arcs().size() == 2);
  CHECK(has_arc(g, g.source(), 0, ArcSet::terminal));
  CHECK(has_arc(g, 0, g.sink(), ArcSet::terminal));
  CHECK(g.head(0) == 0);
  CHECK(g.makespan() == 7);
  CHECK(g.critical_operations() == std::vector<int>{0});
}

TEST_CASE("machine arc between two singleton batches") {
  const Instance in({false}, {{10}}, {1, 1}, {{{3}}, {{4}}}, 2.0, 1.0);
  Schedule s = Schedule::empty(in);
  s.machines[0] = {Batch{{1}}, Batch{{0}}};
  const auto g = DisjunctiveGraph::build(in, s);
  CHECK(has_arc(g, 1, 0, ArcSet::machine));
  CHECK(g.head(0) == 4);
  CHECK(g.makespan() == 7);
}

TEST_CASE("parallel machines leave only the longer operation critical") {
  const Instance in({false}, {{10, 10}}, {1, 1}, {{{3, 3}}, {{6, 6}}}, 2.0, 1.0);
  Schedule s = Schedule::empty(in);
  s.machines[0] = {Batch{{0}}};
  s.machines[1] = {Batch{{1}}};
  const auto g = DisjunctiveGraph::build(in, s);
  CHECK(g.critical_operations() == std::vector<int>{1});
}

TEST_CASE("critical blocks") {
  // one machine, three singleton batches; all on the chain are critical
  const Instance chain({false}, {{10}}, {1, 1, 1}, {{{2}}, {{3}}, {{4}}}, 2.0, 1.0);
  Schedule s = Schedule::empty(chain);
  s.machines[0] = {Batch{{0}}, Batch{{1}}, Batch{{2}}};
  auto g = DisjunctiveGraph::build(chain, s);
  auto blocks = critical_blocks(chain, g, s);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0] == std::vector<CriticalBlock>{{0, 0, 2}});

  // the tiny instance: M1's only batch and both M2 batches
  const Instance in = fixtures::tiny_a();
  g = DisjunctiveGraph::build(in, fixtures::tiny_a_joint());
  blocks = critical_blocks(in, g, fixtures::tiny_a_joint());
  CHECK(blocks[0] == std::vector<CriticalBlock>{{0, 0, 0}});
  CHECK(blocks[1] == std::vector<CriticalBlock>{{1, 0, 1}});

  // an idle second machine has no blocks
  const Instance two({false}, {{10, 10}}, {1, 1}, {{{3, 3}}, {{6, 6}}}, 2.0, 1.0);
  Schedule t = Schedule::empty(two);
  t.machines[0] = {Batch{{0}}};
  t.machines[1] = {Batch{{1}}};
  g = DisjunctiveGraph::build(two, t);
  blocks = critical_blocks(two, g, t);
  CHECK(blocks[0].empty());
  CHECK(blocks[1] == std::vector<CriticalBlock>{{1, 0, 0}});
}

TEST_CASE("labels agree with all-path enumeration and the decoder") {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Instance in = fixtures::tiny_instance(seed);
    for (const Schedule& s : enumerate_schedules(in)) {
      const auto g = DisjunctiveGraph::build(in, s);
      const Decoded d = decode(in, s);
      REQUIRE(g.makespan() == d.objectives.makespan);
      REQUIRE(fixtures::brute_longest_path(g) == g.makespan());
      for (int op = 0; op < in.operations(); ++op) {
        CHECK(g.head(op) == d.ops[op].start);
        CHECK(g.head(op) <= g.latest(op));
        const bool critical = fixtures::brute_longest_through(g, op) == g.makespan();
        CHECK(g.is_critical(op) == critical);
      }
    }
  }
  for (int trial = 0; trial < 300; ++trial) {
    const Instance in = fixtures::small_instance(trial + 7, 8, 3, 3);
    const Schedule s = fixtures::random_schedule(in, rng);
    const auto g = DisjunctiveGraph::build(in, s);
    const Decoded d = decode(in, s);
    CHECK(g.makespan() == d.objectives.makespan);
    for (int op = 0; op < in.operations(); ++op) CHECK(g.head(op) == d.ops[op].start);
    CHECK(static_cast<int>(g.topological_order().size()) == g.nodes());
  }
}

TEST_CASE("removing any operation leaves an acyclic graph") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance in = fixtures::small_instance(trial + 3, 6, 3, 2);
    const Schedule s = fixtures::random_schedule(in, rng);
    const int job = trial % in.jobs(), stage = trial % in.stages();
    const Detached d = detach(in, s, job, stage);
    const auto g = DisjunctiveGraph::build(in, d.schedule);
    CHECK(static_cast<int>(g.topological_order().size()) == g.nodes() - 1);
    CHECK_FALSE(g.assigned(op_index(in, job, stage)));
    CHECK(g.weight(op_index(in, job, stage)) == 0);
  }
}

TEST_CASE("edge list dump") {
  const Instance in = fixtures::tiny_a();
  std::ostringstream out;
  DisjunctiveGraph::build(in, fixtures::tiny_a_joint()).write_edge_list(out);
  const std::string text = out.str();
  CHECK(text.find("O0_0 O0_1 A") != std::string::npos);
  CHECK(text.find("O1_0 O0_1 B") != std::string::npos);
  CHECK(text.find("O0_1 O1_1 E") != std::string::npos);
  CHECK(text.find("s O0_0 T") != std::string::npos);
  CHECK(text.find("O1_1 e T") != std::string::npos);
}
