// Outer-cycle groups, maximal groups with their central vertices and
// pre-central sets, and the a/b counts behind conditions c1 and c2.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "validate.hpp"

namespace icc {

// A maximal outer-cycle group: the cycles sharing its central vertex,
// which one cannot enlarge by moving to any other vertex's group.
struct Mocg {
  std::vector<OuterCycle> cycles;
  int ccv = 0;
  std::vector<int> pre_central;  // ascending, one per constituent cycle
  bool isolated = false;

  int cycle_count() const { return static_cast<int>(cycles.size()); }
  bool even_cycle_count() const { return cycle_count() % 2 == 0; }
  const char* parity() const { return even_cycle_count() ? "even" : "odd"; }
  std::set<int> vertex_set() const;
};

// Union of all outer-cycle vertex sets (V_OC).
std::set<int> all_outer_cycle_vertices(const std::vector<OuterCycle>& cycles);

// Union of the vertex sets of cycles through j (the group of j).
std::set<int> group_vertex_set(const std::vector<OuterCycle>& cycles, int j);

// The cycles containing j; j must be non-inner and on at least one.
std::vector<OuterCycle> outer_cycle_group(const SideInfoGraph& g,
                                          const std::vector<OuterCycle>& cycles, int j);

// All maximal groups among vertices lying on two or more cycles,
// sorted by central vertex.
std::vector<Mocg> find_mocgs(const SideInfoGraph& g, const std::vector<OuterCycle>& cycles);

// Union of the vertex sets of all isolated maximal groups.
std::set<int> isolated_group_vertices(const std::vector<Mocg>& mocgs);

// a_{i,j}: how many non-inner vertices of the tree rooted at i have j in
// their out-neighborhood; j must be a non-inner tree vertex at depth >= 2.
int count_a(const SideInfoGraph& g, const std::vector<RootedTree>& trees, int i, int j);

// b_{i,j}: the same count for a vertex j outside the tree rooted at i.
int count_b(const SideInfoGraph& g, const std::vector<RootedTree>& trees, int i, int j);

struct ConditionWitness {
  std::string condition;  // "c1" or "c2"
  int inner = 0;
  int vertex = 0;
  int value = 0;
};

struct ConditionReport {
  bool c1_ok = true;  // every applicable a_{i,j} odd
  bool c2_ok = true;  // every applicable b_{i,j} zero
  std::vector<ConditionWitness> witnesses;
};

ConditionReport check_c1_c2(const SideInfoGraph& g, const std::vector<RootedTree>& trees);

struct StructureAnalysis {
  std::vector<OuterCycle> outer_cycles;
  std::vector<Mocg> mocgs;
  ConditionReport conditions;
  bool conditions_computed = false;
};

StructureAnalysis analyze_structure(const SideInfoGraph& g,
                                    const std::vector<RootedTree>& trees,
                                    bool with_conditions = true);

Json analysis_to_json(const StructureAnalysis& analysis);

}  // namespace icc
