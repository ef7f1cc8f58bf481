// Outer-cycle groups, maximal group detection with central and
// pre-central vertices, and the a/b counts behind conditions c1 and c2.
#include "icc/cycles.hpp"

#include <algorithm>
#include <map>

#include "icc/error.hpp"
#include "icc/log.hpp"

namespace icc {

std::set<int> Mocg::vertex_set() const { return all_outer_cycle_vertices(cycles); }

std::set<int> all_outer_cycle_vertices(const std::vector<OuterCycle>& cycles) {
  std::set<int> result;
  for (const auto& c : cycles) result.insert(c.vertices.begin(), c.vertices.end());
  return result;
}

std::set<int> group_vertex_set(const std::vector<OuterCycle>& cycles, int j) {
  std::set<int> result;
  for (const auto& c : cycles)
    if (c.contains(j)) result.insert(c.vertices.begin(), c.vertices.end());
  return result;
}

std::vector<OuterCycle> outer_cycle_group(const SideInfoGraph& g,
                                          const std::vector<OuterCycle>& cycles, int j) {
  if (is_inner(g, j))
    throw Error(ErrorKind::PreconditionViolation,
                "vertex " + std::to_string(j) + " is inner, groups are for non-inner vertices",
                {{"vertex", j}});
  std::vector<OuterCycle> group;
  for (const auto& c : cycles)
    if (c.contains(j)) group.push_back(c);
  if (group.empty())
    throw Error(ErrorKind::VertexNotOnAnyCycle,
                "vertex " + std::to_string(j) + " lies on no outer cycle", {{"vertex", j}});
  return group;
}

std::vector<Mocg> find_mocgs(const SideInfoGraph&, const std::vector<OuterCycle>& cycles) {
  // Group of a vertex = the set of cycles through it, tracked by index.
  std::map<int, std::set<std::size_t>> group_of;
  for (std::size_t ci = 0; ci < cycles.size(); ++ci)
    for (int v : cycles[ci].vertices) group_of[v].insert(ci);

  // Candidates are vertices on two or more cycles; their groups compete
  // for maximality under set inclusion.
  std::vector<std::set<std::size_t>> groups;
  for (const auto& [v, group] : group_of) {
    if (group.size() < 2) continue;
    if (std::find(groups.begin(), groups.end(), group) == groups.end()) groups.push_back(group);
  }
  std::vector<std::set<std::size_t>> maximal;
  for (const auto& group : groups) {
    bool dominated = false;
    for (const auto& other : groups) {
      if (other.size() <= group.size()) continue;
      if (std::includes(other.begin(), other.end(), group.begin(), group.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(group);
  }

  std::vector<Mocg> mocgs;
  for (const auto& group : maximal) {
    Mocg m;
    for (std::size_t ci : group) m.cycles.push_back(cycles[ci]);
    std::sort(m.cycles.begin(), m.cycles.end());

    // The central vertex is the one whose group is exactly this cycle
    // set; ties go to the highest in-degree within the group subgraph.
    std::vector<int> defining;
    for (const auto& [v, vgroup] : group_of)
      if (vgroup == group) defining.push_back(v);
    if (defining.empty())
      throw Error(ErrorKind::PreconditionViolation, "maximal group has no defining vertex");
    if (defining.size() == 1) {
      m.ccv = defining.front();
    } else {
      std::set<std::pair<int, int>> subgraph_edges;
      for (const auto& c : m.cycles)
        for (const auto& e : c.edge_sequence()) subgraph_edges.insert(e);
      std::map<int, int> indegree;
      for (int v : defining) indegree[v] = 0;
      for (const auto& [u, v] : subgraph_edges)
        if (indegree.count(v)) ++indegree[v];
      int best = -1;
      std::vector<int> winners;
      for (int v : defining) {
        if (indegree[v] > best) {
          best = indegree[v];
          winners = {v};
        } else if (indegree[v] == best) {
          winners.push_back(v);
        }
      }
      if (winners.size() != 1) {
        Json tied = Json::array();
        for (int v : winners) tied.push_back(v);
        Json group_json = Json::array();
        for (const auto& c : m.cycles) group_json.push_back(c.vertices);
        throw Error(ErrorKind::CcvTie,
                    "no unique central vertex: " + std::to_string(winners.size()) +
                        " candidates share the top in-degree",
                    {{"tied", std::move(tied)}, {"cycles", std::move(group_json)}});
      }
      m.ccv = winners.front();
    }

    // One pre-central vertex per constituent cycle: the in-neighbor of
    // the central vertex along that cycle.
    std::set<int> seen;
    for (const auto& c : m.cycles) {
      auto it = std::find(c.vertices.begin(), c.vertices.end(), m.ccv);
      std::size_t idx = static_cast<std::size_t>(it - c.vertices.begin());
      int pred = c.vertices[(idx + c.vertices.size() - 1) % c.vertices.size()];
      if (!seen.insert(pred).second)
        throw Error(ErrorKind::PreCentralDuplicate,
                    "vertex " + std::to_string(pred) +
                        " precedes the central vertex on two cycles of one group",
                    {{"vertex", pred}, {"ccv", m.ccv}});
      m.pre_central.push_back(pred);
    }
    std::sort(m.pre_central.begin(), m.pre_central.end());

    // Isolated means no vertex of the group lies on a cycle outside it.
    std::set<int> group_vertices = all_outer_cycle_vertices(m.cycles);
    m.isolated = true;
    for (std::size_t ci = 0; ci < cycles.size() && m.isolated; ++ci) {
      if (group.count(ci)) continue;
      for (int v : cycles[ci].vertices)
        if (group_vertices.count(v)) {
          m.isolated = false;
          break;
        }
    }
    mocgs.push_back(std::move(m));
  }

  std::sort(mocgs.begin(), mocgs.end(),
            [](const Mocg& a, const Mocg& b) { return a.ccv < b.ccv; });
  return mocgs;
}

std::set<int> isolated_group_vertices(const std::vector<Mocg>& mocgs) {
  std::set<int> result;
  for (const auto& m : mocgs)
    if (m.isolated) {
      auto vs = m.vertex_set();
      result.insert(vs.begin(), vs.end());
    }
  return result;
}

namespace {

int count_sources(const SideInfoGraph& g, const RootedTree& tree, int j) {
  int count = 0;
  for (int v : tree_non_inner(g, tree))
    for (int w : out_neighbors(g, v))
      if (w == j) ++count;
  return count;
}

}  // namespace

int count_a(const SideInfoGraph& g, const std::vector<RootedTree>& trees, int i, int j) {
  const RootedTree& tree = tree_for(trees, i);
  if (!tree.contains(j) || is_inner(g, j) || tree.depth_of.at(j) < 2)
    throw Error(ErrorKind::PreconditionViolation,
                "a-count needs a non-inner tree vertex at depth >= 2, got " + std::to_string(j) +
                    " for root " + std::to_string(i),
                {{"inner", i}, {"vertex", j}});
  return count_sources(g, tree, j);
}

int count_b(const SideInfoGraph& g, const std::vector<RootedTree>& trees, int i, int j) {
  const RootedTree& tree = tree_for(trees, i);
  if (j < 1 || j > g.num_vertices || tree.contains(j))
    throw Error(ErrorKind::PreconditionViolation,
                "b-count needs a vertex outside the tree rooted at " + std::to_string(i) +
                    ", got " + std::to_string(j),
                {{"inner", i}, {"vertex", j}});
  return count_sources(g, tree, j);
}

ConditionReport check_c1_c2(const SideInfoGraph& g, const std::vector<RootedTree>& trees) {
  ConditionReport report;
  for (const auto& tree : trees) {
    for (int j : tree_non_inner(g, tree)) {
      if (tree.depth_of.at(j) < 2) continue;
      int a = count_a(g, trees, tree.root, j);
      if (a % 2 == 0) {
        report.c1_ok = false;
        report.witnesses.push_back({"c1", tree.root, j, a});
      }
    }
    for (int j = 1; j <= g.num_vertices; ++j) {
      if (tree.contains(j)) continue;
      int b = count_b(g, trees, tree.root, j);
      if (b != 0) {
        report.c2_ok = false;
        report.witnesses.push_back({"c2", tree.root, j, b});
      }
    }
  }
  return report;
}

StructureAnalysis analyze_structure(const SideInfoGraph& g, const std::vector<RootedTree>& trees,
                                    bool with_conditions) {
  StructureAnalysis analysis;
  analysis.outer_cycles = find_outer_cycles(g);
  analysis.mocgs = find_mocgs(g, analysis.outer_cycles);
  if (with_conditions) {
    analysis.conditions = check_c1_c2(g, trees);
    analysis.conditions_computed = true;
  }
  logf(1, "analyze: cycles=%zu mocgs=%zu c1=%d c2=%d", analysis.outer_cycles.size(),
       analysis.mocgs.size(), analysis.conditions.c1_ok ? 1 : 0,
       analysis.conditions.c2_ok ? 1 : 0);
  return analysis;
}

Json analysis_to_json(const StructureAnalysis& analysis) {
  Json doc;
  Json cycles = Json::array();
  for (const auto& c : analysis.outer_cycles) {
    Json edges = Json::array();
    for (const auto& [u, v] : c.edge_sequence()) edges.push_back({u, v});
    cycles.push_back({{"vertices", c.vertices}, {"edge_sequence", std::move(edges)}});
  }
  doc["outer_cycles"] = std::move(cycles);
  Json mocgs = Json::array();
  for (const auto& m : analysis.mocgs) {
    Json member_cycles = Json::array();
    for (const auto& c : m.cycles) member_cycles.push_back(c.vertices);
    mocgs.push_back({{"ccv", m.ccv},
                     {"cycles", std::move(member_cycles)},
                     {"pre_central", m.pre_central},
                     {"isolated", m.isolated},
                     {"parity", m.parity()}});
  }
  doc["mocgs"] = std::move(mocgs);
  if (analysis.conditions_computed) {
    doc["c1_ok"] = analysis.conditions.c1_ok;
    doc["c2_ok"] = analysis.conditions.c2_ok;
    Json witnesses = Json::array();
    for (const auto& w : analysis.conditions.witnesses)
      witnesses.push_back({{"condition", w.condition},
                           {"inner", w.inner},
                           {"vertex", w.vertex},
                           {"value", w.value}});
    doc["witnesses"] = std::move(witnesses);
  } else {
    doc["c1_ok"] = nullptr;
    doc["c2_ok"] = nullptr;
    doc["witnesses"] = Json::array();
  }
  return doc;
}

}  // namespace icc
