// Structure recognition: I-cycles, I-paths, rooted trees, the three
// structural conditions, and elementary outer-cycle enumeration.
#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace icc {

// An elementary directed cycle of non-inner vertices, stored in cyclic
// order rotated so the smallest vertex id comes first.
struct OuterCycle {
  std::vector<int> vertices;

  std::vector<std::pair<int, int>> edge_sequence() const;
  std::set<int> vertex_set() const;
  bool contains(int v) const;

  bool operator==(const OuterCycle&) const = default;
  bool operator<(const OuterCycle& other) const { return vertices < other.vertices; }
};

// Union of the unique I-paths from one inner vertex to all others.
// The root has depth 0; every other inner vertex appears as a leaf.
struct RootedTree {
  int root = 0;
  std::map<int, int> parent_of;  // non-root tree vertex -> predecessor
  std::map<int, int> depth_of;   // tree vertex -> depth

  bool contains(int v) const { return depth_of.count(v) != 0; }
  std::vector<int> vertices() const;
  std::vector<int> children_of_root() const;
  std::set<std::pair<int, int>> edge_set() const;
};

// V_NI(i): the non-inner vertices of the tree rooted at i.
std::vector<int> tree_non_inner(const SideInfoGraph& g, const RootedTree& t);
const RootedTree& tree_for(const std::vector<RootedTree>& trees, int root);

struct IPathViolation {
  int from = 0;
  int to = 0;
  int count = 0;
  std::vector<std::vector<int>> paths;  // witnesses, at most 4
};

struct UnionGap {
  std::vector<std::pair<int, int>> uncovered_edges;
  std::vector<int> uncovered_vertices;

  bool empty() const { return uncovered_edges.empty() && uncovered_vertices.empty(); }
};

struct ValidationReport {
  bool is_ic_structure = false;
  std::vector<std::vector<int>> i_cycles_found;
  std::vector<IPathViolation> ipath_violations;
  UnionGap union_gap;
  std::vector<OuterCycle> outer_cycles;
  bool has_outer_cycles = false;
};

// Every elementary cycle containing exactly one inner vertex.
std::vector<std::vector<int>> find_i_cycles(const SideInfoGraph& g);

// All simple paths a -> b whose interior vertices are all non-inner.
std::vector<std::vector<int>> enumerate_i_paths(const SideInfoGraph& g, int a, int b);

RootedTree build_rooted_tree(const SideInfoGraph& g, int i);
std::vector<RootedTree> build_all_trees(const SideInfoGraph& g);

ValidationReport validate(const SideInfoGraph& g);

// Every elementary cycle made of non-inner vertices only, deduplicated
// up to rotation and sorted lexicographically.
std::vector<OuterCycle> find_outer_cycles(const SideInfoGraph& g);

Json report_to_json(const ValidationReport& report);

// Guard against runaway cycle enumeration on adversarial inputs.
inline constexpr std::size_t kCycleCap = 1000000;

}  // namespace icc
