// Corpus-wide properties: structural invariants, both constructions,
// both decode combinations, and the certificate oracle must agree on
// every enumerated structure.
#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "icc/oracle.hpp"
#include "util.hpp"

using namespace icc;

namespace {

const std::vector<SideInfoGraph>& corpus() {
  static const std::vector<SideInfoGraph> graphs = [] {
    EnumerateOptions opts;
    opts.max_n = 7;
    opts.budget = 20000;
    opts.seed = 424242;
    return enumerate_ic_structures(opts);
  }();
  return graphs;
}

Codebook encode2(const SideInfoGraph& g, const std::vector<RootedTree>& trees) {
  return encode_construction2(g, trees, find_mocgs(g, find_outer_cycles(g)), {});
}

// Smallest structure violating the second decodability condition: the
// non-inner part carries the cycle 5 -> 7 -> 6 -> 5 and b_{4,7} = 1.
SideInfoGraph c2_violator() {
  return parse_graph(
      "n: 7\ninner: 1 2 3 4\n"
      "edge: 1 2\nedge: 1 3\nedge: 1 4\nedge: 2 1\nedge: 2 3\nedge: 2 4\n"
      "edge: 3 4\nedge: 3 5\nedge: 4 3\nedge: 4 6\nedge: 5 1\nedge: 5 7\n"
      "edge: 6 2\nedge: 6 5\nedge: 7 6\n");
}

}  // namespace

TEST_CASE("every corpus structure validates and meets the length law") {
  int with_cycles = 0;
  for (const SideInfoGraph& g : corpus()) {
    CAPTURE(g.num_vertices);
    ValidationReport r = validate(g);
    REQUIRE(r.is_ic_structure);
    with_cycles += r.has_outer_cycles ? 1 : 0;
    auto trees = build_all_trees(g);
    int n = g.num_vertices;
    int k = static_cast<int>(g.inner_vertices.size());
    REQUIRE(static_cast<int>(encode2(g, trees).size()) == n - k + 1);
  }
  CHECK(corpus().size() > 1000);
  CHECK(with_cycles >= 100);
}

TEST_CASE("outer cycles need six vertices") {
  for (const SideInfoGraph& g : corpus())
    if (g.num_vertices <= 5) REQUIRE(find_outer_cycles(g).empty());
  bool at_six = false;
  for (const SideInfoGraph& g : corpus())
    at_six = at_six || (g.num_vertices == 6 && !find_outer_cycles(g).empty());
  CHECK(at_six);
}

TEST_CASE("b counts stay in {0, 1} across the corpus") {
  for (const SideInfoGraph& g : corpus()) {
    auto trees = build_all_trees(g);
    for (const RootedTree& t : trees) {
      for (int j = 1; j <= g.num_vertices; ++j) {
        if (t.contains(j)) continue;
        int b = count_b(g, trees, t.root, j);
        CAPTURE(g.num_vertices);
        CAPTURE(t.root);
        CAPTURE(j);
        REQUIRE((b == 0 || b == 1));
      }
    }
  }
}

TEST_CASE("maximal groups are well formed across the corpus") {
  for (const SideInfoGraph& g : corpus()) {
    auto cycles = find_outer_cycles(g);
    std::vector<Mocg> mocgs = find_mocgs(g, cycles);  // never a tie on valid structures
    for (std::size_t a = 0; a < mocgs.size(); ++a) {
      REQUIRE(mocgs[a].cycle_count() >= 2);
      std::set<OuterCycle> ca(mocgs[a].cycles.begin(), mocgs[a].cycles.end());
      for (std::size_t b = 0; b < mocgs.size(); ++b) {
        if (a == b) continue;
        std::set<OuterCycle> cb(mocgs[b].cycles.begin(), mocgs[b].cycles.end());
        REQUIRE(!std::includes(cb.begin(), cb.end(), ca.begin(), ca.end()));
      }
    }

    std::set<int> v_oc = all_outer_cycle_vertices(cycles);
    for (const Mocg& m : mocgs) {
      // Defining vertices share the whole cycle set; inside the group's
      // deduplicated edges the central one takes an in-edge per cycle,
      // the rest exactly one.
      std::set<OuterCycle> mine(m.cycles.begin(), m.cycles.end());
      std::set<std::pair<int, int>> group_edges;
      for (const OuterCycle& c : m.cycles)
        for (auto e : c.edge_sequence()) group_edges.insert(e);
      for (int v : m.vertex_set()) {
        REQUIRE(v_oc.count(v) == 1);
        std::set<OuterCycle> vgroup;
        for (const OuterCycle& c : cycles)
          if (c.contains(v)) vgroup.insert(c);
        int indeg = 0;
        for (auto [s, t] : group_edges) indeg += (t == v) ? 1 : 0;
        CAPTURE(v);
        if (v == m.ccv) {
          REQUIRE(vgroup == mine);
          REQUIRE(indeg == m.cycle_count());
        } else if (vgroup == mine) {
          REQUIRE(indeg == 1);
        }
      }
    }
    for (int v : isolated_group_vertices(mocgs)) REQUIRE(v_oc.count(v) == 1);
  }
}

TEST_CASE("cycle-free structures reduce to the baseline") {
  int seen = 0;
  for (const SideInfoGraph& g : corpus()) {
    if (!find_outer_cycles(g).empty()) continue;
    ++seen;
    auto trees = build_all_trees(g);
    Codebook c1 = encode_construction1(g, trees);
    Codebook c2 = encode2(g, trees);
    REQUIRE(c1.size() == c2.size());
    for (const CodeSymbol& s : c1.symbols) {
      const CodeSymbol* other = c2.find(s.label);
      REQUIRE(other != nullptr);
      REQUIRE(s.support == other->support);
    }
    StructureAnalysis analysis = analyze_structure(g, trees, false);
    for (int i : g.inner_vertices) {
      DecodeEquation a = derive_z_algorithm1(c1, trees, i);
      DecodeEquation b = derive_z_algorithm2(c2, trees, analysis, i);
      REQUIRE(a.combined == b.combined);
      REQUIRE(a.z_support == b.z_support);
      REQUIRE(b.v_nic.empty());
      REQUIRE(b.v_prime.empty());
    }
  }
  CHECK(seen > 0);
}

TEST_CASE("combined supports decode from side information across the corpus") {
  for (const SideInfoGraph& g : corpus()) {
    auto trees = build_all_trees(g);
    StructureAnalysis analysis = analyze_structure(g, trees, false);
    Codebook book = encode2(g, trees);
    for (int i : g.inner_vertices) {
      DecodeEquation eq = derive_z_algorithm2(book, trees, analysis, i);
      CAPTURE(g.num_vertices);
      CAPTURE(i);
      REQUIRE(eq.decodable_for(g));
      REQUIRE(std::find(eq.z_support.begin(), eq.z_support.end(), i) != eq.z_support.end());
      for (int v : eq.z_support) {
        if (v == i) continue;
        REQUIRE(g.edges.count({i, v}) == 1);  // z \ {i} within N+(i)
      }
    }
  }
}

TEST_CASE("baseline decodability agrees with the two conditions") {
  int failing = 0;
  for (const SideInfoGraph& g : corpus()) {
    auto trees = build_all_trees(g);
    ConditionReport cond = check_c1_c2(g, trees);
    Codebook book = construction1_supports(g);
    bool all_ok = true;
    for (int i : g.inner_vertices)
      all_ok = all_ok && derive_z_algorithm1(book, trees, i).decodable_for(g);
    CAPTURE(g.num_vertices);
    REQUIRE(all_ok == (cond.c1_ok && cond.c2_ok));
    failing += all_ok ? 0 : 1;
  }
  CHECK(failing > 0);  // the agreement must be exercised in both directions
}

TEST_CASE("second condition violations need seven vertices") {
  for (const SideInfoGraph& g : corpus()) {
    if (g.num_vertices > 6) continue;
    CAPTURE(g.num_vertices);
    REQUIRE(check_c1_c2(g, build_all_trees(g)).c2_ok);
  }

  SideInfoGraph g = c2_violator();
  REQUIRE(validate(g).is_ic_structure);
  auto trees = build_all_trees(g);
  CHECK(count_b(g, trees, 4, 7) == 1);
  ConditionReport cond = check_c1_c2(g, trees);
  CHECK(!cond.c2_ok);
  REQUIRE(cond.witnesses.size() == 1);
  CHECK(cond.witnesses[0].condition == "c2");
  CHECK(cond.witnesses[0].inner == 4);
  CHECK(cond.witnesses[0].vertex == 7);

  // The cycle-aware construction still certifies, the baseline cannot.
  Codebook book = encode2(g, trees);
  CHECK(certify(g, book).all_decodable());
  bool baseline_ok = true;
  Codebook base = construction1_supports(g);
  for (int i : g.inner_vertices)
    baseline_ok = baseline_ok && derive_z_algorithm1(base, trees, i).decodable_for(g);
  CHECK(!baseline_ok);
}

TEST_CASE("central-vertex message parity over its group symbols") {
  for (const SideInfoGraph& g : corpus()) {
    auto trees = build_all_trees(g);
    auto mocgs = find_mocgs(g, find_outer_cycles(g));
    Codebook book = encode2(g, trees);
    for (const Mocg& m : mocgs) {
      bool covered = m.isolated || m.even_cycle_count();
      if (!covered) continue;
      int occurrences = 0;
      const CodeSymbol* own = book.find(m.ccv);
      REQUIRE(own != nullptr);
      occurrences += std::count(own->support.begin(), own->support.end(), m.ccv);
      for (int p : m.pre_central) {
        const CodeSymbol* s = book.find(p);
        REQUIRE(s != nullptr);
        occurrences += std::count(s->support.begin(), s->support.end(), m.ccv);
      }
      CAPTURE(m.ccv);
      REQUIRE(occurrences % 2 == 0);
    }
  }
}

TEST_CASE("cycle-vertex messages stay inside their group's symbols") {
  for (const SideInfoGraph& g : corpus()) {
    auto trees = build_all_trees(g);
    auto cycles = find_outer_cycles(g);
    std::set<int> v_oc = all_outer_cycle_vertices(cycles);
    Codebook book = encode2(g, trees);
    for (const CodeSymbol& s : book.symbols) {
      if (s.is_inner_symbol()) continue;
      for (int v : s.support) {
        if (!v_oc.count(v)) continue;
        CAPTURE(s.label);
        CAPTURE(v);
        REQUIRE(group_vertex_set(cycles, v).count(s.label) == 1);
      }
    }
  }
}
