// Structure recognition: I-cycles, I-paths, rooted trees, validation,
// and Johnson-style outer-cycle enumeration.
#include "icc/validate.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "icc/error.hpp"
#include "icc/log.hpp"

namespace icc {

namespace {

constexpr std::size_t kWitnessCap = 16;

}  // namespace

std::vector<std::pair<int, int>> OuterCycle::edge_sequence() const {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    edges.push_back({vertices[i], vertices[(i + 1) % vertices.size()]});
  return edges;
}

std::set<int> OuterCycle::vertex_set() const { return {vertices.begin(), vertices.end()}; }

bool OuterCycle::contains(int v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

std::vector<int> RootedTree::vertices() const {
  std::vector<int> result;
  for (const auto& [v, depth] : depth_of) result.push_back(v);
  return result;
}

std::vector<int> RootedTree::children_of_root() const {
  std::vector<int> result;
  for (const auto& [v, parent] : parent_of)
    if (parent == root) result.push_back(v);
  return result;
}

std::set<std::pair<int, int>> RootedTree::edge_set() const {
  std::set<std::pair<int, int>> result;
  for (const auto& [v, parent] : parent_of) result.insert({parent, v});
  return result;
}

std::vector<int> tree_non_inner(const SideInfoGraph& g, const RootedTree& t) {
  std::vector<int> result;
  for (const auto& [v, depth] : t.depth_of)
    if (!is_inner(g, v)) result.push_back(v);
  return result;
}

const RootedTree& tree_for(const std::vector<RootedTree>& trees, int root) {
  for (const auto& t : trees)
    if (t.root == root) return t;
  throw Error(ErrorKind::PreconditionViolation,
              "no tree rooted at vertex " + std::to_string(root), {{"root", root}});
}

std::vector<std::vector<int>> find_i_cycles(const SideInfoGraph& g) {
  std::vector<std::vector<int>> found;
  std::vector<int> path;
  std::vector<char> on_path(g.num_vertices + 1, 0);

  std::function<void(int, int)> dfs = [&](int root, int u) {
    if (found.size() >= kWitnessCap) return;
    for (int w : out_neighbors(g, u)) {
      if (found.size() >= kWitnessCap) return;
      if (w == root) {
        if (!path.empty()) {
          std::vector<int> cycle{root};
          cycle.insert(cycle.end(), path.begin(), path.end());
          found.push_back(std::move(cycle));
        }
      } else if (!is_inner(g, w) && !on_path[w]) {
        on_path[w] = 1;
        path.push_back(w);
        dfs(root, w);
        path.pop_back();
        on_path[w] = 0;
      }
    }
  };

  for (int i : g.inner_vertices) {
    if (found.size() >= kWitnessCap) break;
    dfs(i, i);
  }
  return found;
}

std::vector<std::vector<int>> enumerate_i_paths(const SideInfoGraph& g, int a, int b) {
  if (!is_inner(g, a) || !is_inner(g, b) || a == b)
    throw Error(ErrorKind::PreconditionViolation,
                "need two distinct inner vertices, got " + std::to_string(a) + " and " +
                    std::to_string(b),
                {{"from", a}, {"to", b}});
  std::vector<std::vector<int>> paths;
  std::vector<int> path{a};
  std::vector<char> on_path(g.num_vertices + 1, 0);

  std::function<void(int)> dfs = [&](int u) {
    for (int w : out_neighbors(g, u)) {
      if (w == b) {
        if (paths.size() >= kCycleCap)
          throw Error(ErrorKind::LimitExceeded,
                      "more than " + std::to_string(kCycleCap) + " paths from " +
                          std::to_string(a) + " to " + std::to_string(b),
                      {{"from", a}, {"to", b}});
        paths.push_back(path);
        paths.back().push_back(b);
      } else if (!is_inner(g, w) && !on_path[w]) {
        on_path[w] = 1;
        path.push_back(w);
        dfs(w);
        path.pop_back();
        on_path[w] = 0;
      }
    }
  };
  dfs(a);
  return paths;
}

RootedTree build_rooted_tree(const SideInfoGraph& g, int i) {
  if (!is_inner(g, i))
    throw Error(ErrorKind::NotInnerVertex, "vertex " + std::to_string(i) + " is not inner",
                {{"vertex", i}});
  RootedTree t;
  t.root = i;
  t.depth_of[i] = 0;
  for (int j : g.inner_vertices) {
    if (j == i) continue;
    auto paths = enumerate_i_paths(g, i, j);
    if (paths.size() != 1)
      throw Error(ErrorKind::IPathNotUnique,
                  "found " + std::to_string(paths.size()) + " interior-disjoint routes from " +
                      std::to_string(i) + " to " + std::to_string(j) + ", need exactly one",
                  {{"from", i}, {"to", j}, {"count", paths.size()}});
    const auto& path = paths.front();
    for (std::size_t k = 1; k < path.size(); ++k) {
      int parent = path[k - 1];
      int child = path[k];
      auto it = t.parent_of.find(child);
      if (it != t.parent_of.end()) {
        if (it->second != parent)
          throw Error(ErrorKind::IPathNotUnique,
                      "vertex " + std::to_string(child) + " is reached along two routes from " +
                          std::to_string(i),
                      {{"from", i}, {"to", child}, {"count", 2}});
      } else {
        t.parent_of[child] = parent;
        t.depth_of[child] = t.depth_of[parent] + 1;
      }
    }
  }
  return t;
}

std::vector<RootedTree> build_all_trees(const SideInfoGraph& g) {
  std::vector<RootedTree> trees;
  for (int i : g.inner_vertices) trees.push_back(build_rooted_tree(g, i));
  return trees;
}

ValidationReport validate(const SideInfoGraph& g) {
  if (g.inner_vertices.size() < 2)
    throw Error(ErrorKind::PreconditionViolation,
                "need at least two inner vertices, got " +
                    std::to_string(g.inner_vertices.size()),
                {{"inner_count", g.inner_vertices.size()}});

  ValidationReport report;
  report.i_cycles_found = find_i_cycles(g);

  for (int a : g.inner_vertices) {
    for (int b : g.inner_vertices) {
      if (a == b) continue;
      auto paths = enumerate_i_paths(g, a, b);
      if (paths.size() == 1) continue;
      IPathViolation violation;
      violation.from = a;
      violation.to = b;
      violation.count = static_cast<int>(paths.size());
      for (std::size_t k = 0; k < paths.size() && k < 4; ++k)
        violation.paths.push_back(paths[k]);
      report.ipath_violations.push_back(std::move(violation));
    }
  }

  if (report.ipath_violations.empty()) {
    std::set<std::pair<int, int>> covered_edges;
    std::set<int> covered_vertices;
    for (const auto& t : build_all_trees(g)) {
      auto edges = t.edge_set();
      covered_edges.insert(edges.begin(), edges.end());
      for (const auto& [v, depth] : t.depth_of) covered_vertices.insert(v);
    }
    for (const auto& e : g.edges)
      if (covered_edges.count(e) == 0) report.union_gap.uncovered_edges.push_back(e);
    for (int v = 1; v <= g.num_vertices; ++v)
      if (covered_vertices.count(v) == 0) report.union_gap.uncovered_vertices.push_back(v);
  }

  report.outer_cycles = find_outer_cycles(g);
  report.has_outer_cycles = !report.outer_cycles.empty();
  report.is_ic_structure = report.i_cycles_found.empty() &&
                           report.ipath_violations.empty() && report.union_gap.empty();
  logf(1, "validate: n=%d k=%zu ic=%d cycles=%zu", g.num_vertices, g.inner_vertices.size(),
       report.is_ic_structure ? 1 : 0, report.outer_cycles.size());
  return report;
}

std::vector<OuterCycle> find_outer_cycles(const SideInfoGraph& g) {
  std::vector<OuterCycle> cycles;
  std::vector<int> order = non_inner_vertices(g);

  // Johnson-style search: for each start s in ascending order, enumerate
  // elementary cycles whose minimum vertex is s, with blocking to keep the
  // time between reported cycles polynomial.
  for (std::size_t si = 0; si < order.size(); ++si) {
    int s = order[si];
    std::vector<int> path;
    std::map<int, bool> blocked;
    std::map<int, std::set<int>> unblock_after;
    for (std::size_t k = si; k < order.size(); ++k) blocked[order[k]] = false;

    auto allowed = [&](int w) { return !is_inner(g, w) && w >= s; };

    std::function<void(int)> unblock = [&](int v) {
      blocked[v] = false;
      auto pending = unblock_after[v];
      unblock_after[v].clear();
      for (int u : pending)
        if (blocked[u]) unblock(u);
    };

    std::function<bool(int)> circuit = [&](int v) {
      bool found = false;
      path.push_back(v);
      blocked[v] = true;
      for (int w : out_neighbors(g, v)) {
        if (!allowed(w)) continue;
        if (w == s) {
          if (cycles.size() >= kCycleCap)
            throw Error(ErrorKind::LimitExceeded,
                        "more than " + std::to_string(kCycleCap) + " outer cycles");
          cycles.push_back(OuterCycle{path});
          found = true;
        } else if (!blocked[w]) {
          if (circuit(w)) found = true;
        }
      }
      if (found) {
        unblock(v);
      } else {
        for (int w : out_neighbors(g, v))
          if (allowed(w) && w != s) unblock_after[w].insert(v);
      }
      path.pop_back();
      return found;
    };

    circuit(s);
  }

  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

Json report_to_json(const ValidationReport& report) {
  Json doc;
  doc["is_ic_structure"] = report.is_ic_structure;
  doc["i_cycles_found"] = report.i_cycles_found;
  Json violations = Json::array();
  for (const auto& v : report.ipath_violations)
    violations.push_back(
        {{"from", v.from}, {"to", v.to}, {"count", v.count}, {"paths", v.paths}});
  doc["ipath_violations"] = std::move(violations);
  Json gap;
  Json gap_edges = Json::array();
  for (const auto& [u, v] : report.union_gap.uncovered_edges) gap_edges.push_back({u, v});
  gap["uncovered_edges"] = std::move(gap_edges);
  gap["uncovered_vertices"] = report.union_gap.uncovered_vertices;
  doc["union_gap"] = std::move(gap);
  Json cycles = Json::array();
  for (const auto& c : report.outer_cycles) {
    Json edges = Json::array();
    for (const auto& [u, v] : c.edge_sequence()) edges.push_back({u, v});
    cycles.push_back({{"vertices", c.vertices}, {"edge_sequence", std::move(edges)}});
  }
  doc["outer_cycles"] = std::move(cycles);
  doc["has_outer_cycles"] = report.has_outer_cycles;
  return doc;
}

}  // namespace icc
