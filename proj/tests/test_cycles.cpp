// Outer-cycle groups, central and pre-central vertices, and the a/b
// counts behind the two decodability conditions.
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "icc/cycles.hpp"
#include "icc/error.hpp"
#include "util.hpp"

using namespace icc;
using icc::test::load_fixture;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind;
  }
  throw std::runtime_error("expected an error");
}

}  // namespace

TEST_CASE("outer cycles of the 17-vertex fixture") {
  SideInfoGraph g = load_fixture("g1.sig");
  std::vector<OuterCycle> cycles = find_outer_cycles(g);
  REQUIRE(cycles.size() == 3);
  CHECK(cycles[0].vertices == std::vector<int>{8, 9, 10});
  CHECK(cycles[1].vertices == std::vector<int>{10, 13});
  CHECK(cycles[2].vertices == std::vector<int>{15, 16});
  CHECK(cycles[0].edge_sequence() ==
        std::vector<std::pair<int, int>>{{8, 9}, {9, 10}, {10, 8}});
  CHECK(all_outer_cycle_vertices(cycles) == std::set<int>{8, 9, 10, 13, 15, 16});
  CHECK(group_vertex_set(cycles, 10) == std::set<int>{8, 9, 10, 13});
  CHECK(group_vertex_set(cycles, 16) == std::set<int>{15, 16});
  CHECK(group_vertex_set(cycles, 7).empty());
}

TEST_CASE("group lookup guards its preconditions") {
  SideInfoGraph g = load_fixture("g1.sig");
  std::vector<OuterCycle> cycles = find_outer_cycles(g);
  CHECK(outer_cycle_group(g, cycles, 10).size() == 2);
  CHECK(kind_of([&] { outer_cycle_group(g, cycles, 1); }) == ErrorKind::PreconditionViolation);
  CHECK(kind_of([&] { outer_cycle_group(g, cycles, 7); }) == ErrorKind::VertexNotOnAnyCycle);
}

TEST_CASE("the 17-vertex fixture has one maximal group") {
  SideInfoGraph g = load_fixture("g1.sig");
  std::vector<Mocg> mocgs = find_mocgs(g, find_outer_cycles(g));
  REQUIRE(mocgs.size() == 1);
  const Mocg& m = mocgs.front();
  CHECK(m.ccv == 10);
  CHECK(m.pre_central == std::vector<int>{9, 13});
  CHECK(m.cycle_count() == 2);
  CHECK(m.even_cycle_count());
  CHECK(m.isolated);
  CHECK(m.vertex_set() == std::set<int>{8, 9, 10, 13});
  CHECK(isolated_group_vertices(mocgs) == std::set<int>{8, 9, 10, 13});
}

TEST_CASE("the 36-vertex fixture has three maximal groups") {
  SideInfoGraph g = load_fixture("ic10.sig");
  std::vector<Mocg> mocgs = find_mocgs(g, find_outer_cycles(g));
  REQUIRE(mocgs.size() == 3);

  CHECK(mocgs[0].ccv == 15);
  CHECK(mocgs[0].cycle_count() == 3);
  CHECK(!mocgs[0].even_cycle_count());
  CHECK(!mocgs[0].isolated);
  CHECK(mocgs[0].pre_central == std::vector<int>{13, 17, 22});
  CHECK(mocgs[0].vertex_set() == std::set<int>{12, 13, 15, 17, 22});

  CHECK(mocgs[1].ccv == 22);
  CHECK(mocgs[1].cycle_count() == 2);
  CHECK(mocgs[1].even_cycle_count());
  CHECK(!mocgs[1].isolated);
  CHECK(mocgs[1].pre_central == std::vector<int>{15, 25});

  CHECK(mocgs[2].ccv == 32);
  CHECK(mocgs[2].cycle_count() == 2);
  CHECK(mocgs[2].even_cycle_count());
  CHECK(mocgs[2].isolated);
  CHECK(mocgs[2].pre_central == std::vector<int>{33, 34});
  CHECK(isolated_group_vertices(mocgs) == std::set<int>{32, 33, 34});
}

TEST_CASE("a lone cycle never forms a maximal group") {
  SideInfoGraph g = parse_graph(
      "n: 5\ninner: 1 2\nedge: 1 3\nedge: 3 4\nedge: 4 3\nedge: 4 2\nedge: 2 5\nedge: 5 1\n");
  std::vector<OuterCycle> cycles = find_outer_cycles(g);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].vertices == std::vector<int>{3, 4});
  CHECK(find_mocgs(g, cycles).empty());
}

TEST_CASE("central-vertex ties are reported, not resolved arbitrarily") {
  SideInfoGraph g = parse_graph(
      "n: 8\ninner: 1 2\n"
      "edge: 3 4\nedge: 4 5\nedge: 5 6\nedge: 6 3\n"
      "edge: 3 7\nedge: 7 5\nedge: 5 8\nedge: 8 3\n");
  std::vector<OuterCycle> cycles = find_outer_cycles(g);
  REQUIRE(cycles.size() == 4);
  CHECK(kind_of([&] { find_mocgs(g, cycles); }) == ErrorKind::CcvTie);
}

TEST_CASE("in-degree breaks central-vertex ties when one candidate wins") {
  SideInfoGraph g = parse_graph(
      "n: 7\ninner: 1 2\n"
      "edge: 5 6\nedge: 6 5\nedge: 6 7\nedge: 7 5\n");
  std::vector<OuterCycle> cycles = find_outer_cycles(g);
  REQUIRE(cycles.size() == 2);
  std::vector<Mocg> mocgs = find_mocgs(g, cycles);
  REQUIRE(mocgs.size() == 1);
  CHECK(mocgs[0].ccv == 5);
  CHECK(mocgs[0].pre_central == std::vector<int>{6, 7});
}

TEST_CASE("a and b counts on a hand-built tree") {
  SideInfoGraph g = parse_graph(
      "n: 5\ninner: 1 2\nedge: 1 3\nedge: 3 4\nedge: 4 2\nedge: 2 5\nedge: 5 1\n");
  REQUIRE(validate(g).is_ic_structure);
  auto trees = build_all_trees(g);
  CHECK(count_a(g, trees, 1, 4) == 1);
  CHECK(count_b(g, trees, 2, 4) == 0);
  ConditionReport r = check_c1_c2(g, trees);
  CHECK(r.c1_ok);
  CHECK(r.c2_ok);
  CHECK(r.witnesses.empty());
}

TEST_CASE("condition counts on the 17-vertex fixture") {
  SideInfoGraph g = load_fixture("g1.sig");
  auto trees = build_all_trees(g);
  CHECK(count_a(g, trees, 1, 8) == 2);
  CHECK(count_a(g, trees, 1, 10) == 2);
  CHECK(count_a(g, trees, 1, 16) == 2);
  CHECK(count_a(g, trees, 5, 10) == 2);
  CHECK(count_a(g, trees, 6, 15) == 2);
  CHECK(count_b(g, trees, 2, 9) == 1);
  CHECK(count_b(g, trees, 5, 9) == 1);
}

TEST_CASE("condition witnesses on the 17-vertex fixture") {
  SideInfoGraph g = load_fixture("g1.sig");
  ConditionReport r = check_c1_c2(g, build_all_trees(g));
  CHECK(!r.c1_ok);
  CHECK(!r.c2_ok);
  REQUIRE(r.witnesses.size() == 7);
  struct Row {
    const char* condition;
    int inner, vertex, value;
  };
  const Row want[] = {{"c1", 1, 8, 2},  {"c1", 1, 10, 2}, {"c1", 1, 16, 2}, {"c2", 2, 9, 1},
                      {"c1", 5, 10, 2}, {"c2", 5, 9, 1},  {"c1", 6, 15, 2}};
  for (std::size_t i = 0; i < 7; ++i) {
    CAPTURE(i);
    CHECK(r.witnesses[i].condition == want[i].condition);
    CHECK(r.witnesses[i].inner == want[i].inner);
    CHECK(r.witnesses[i].vertex == want[i].vertex);
    CHECK(r.witnesses[i].value == want[i].value);
  }
}

TEST_CASE("structure analysis bundles cycles, groups, and conditions") {
  SideInfoGraph g = load_fixture("g1.sig");
  StructureAnalysis a = analyze_structure(g, build_all_trees(g));
  CHECK(a.outer_cycles.size() == 3);
  CHECK(a.mocgs.size() == 1);
  CHECK(a.conditions_computed);
  CHECK(!a.conditions.c1_ok);
  Json doc = analysis_to_json(a);
  CHECK(doc["mocgs"][0]["ccv"] == 10);
  CHECK(doc["c1_ok"] == false);
  CHECK(doc["mocgs"][0]["parity"] == "even");
}
