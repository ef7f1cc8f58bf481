// Ground truth and corpus generation: GF(2) rank certificates, round-trip
// simulation, exhaustive small-size enumeration, and seeded planting of
// larger structures.
#include "icc/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <optional>
#include <random>

#include "icc/error.hpp"
#include "icc/log.hpp"
#include "icc/validate.hpp"

namespace icc {

namespace {

std::size_t words_for(int width) { return static_cast<std::size_t>(width + 63) / 64; }

struct TrackedRow {
  std::vector<std::uint64_t> bits;
  std::vector<std::uint64_t> combo;
};

void xor_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

int lowest_bit(const std::vector<std::uint64_t>& bits) {
  for (std::size_t w = 0; w < bits.size(); ++w)
    if (bits[w] != 0) return static_cast<int>(w * 64 + __builtin_ctzll(bits[w]));
  return -1;
}

bool test_bit(const std::vector<std::uint64_t>& bits, int pos) {
  return (bits[pos / 64] >> (pos % 64)) & 1;
}

void set_bit(std::vector<std::uint64_t>& bits, int pos) {
  bits[pos / 64] |= std::uint64_t{1} << (pos % 64);
}

bool is_zero(const std::vector<std::uint64_t>& bits) {
  for (auto w : bits)
    if (w != 0) return false;
  return true;
}

}  // namespace

void Gf2Matrix::add_row(const std::vector<int>& support) {
  std::vector<std::uint64_t> row(words_for(width), 0);
  for (int v : support) {
    if (v < 1 || v > width)
      throw Error(ErrorKind::IdOutOfRange,
                  "support vertex " + std::to_string(v) + " outside matrix width " +
                      std::to_string(width));
    set_bit(row, v - 1);
  }
  rows.push_back(std::move(row));
}

int Gf2Matrix::rank() const {
  std::vector<std::vector<std::uint64_t>> work = rows;
  int rank = 0;
  for (std::size_t r = 0; r < work.size(); ++r) {
    for (std::size_t p = 0; p < static_cast<std::size_t>(rank); ++p) {
      int col = lowest_bit(work[p]);
      if (col >= 0 && test_bit(work[r], col)) xor_into(work[r], work[p]);
    }
    if (!is_zero(work[r])) {
      std::swap(work[r], work[rank]);
      ++rank;
    }
  }
  return rank;
}

bool OracleCertificate::all_decodable() const {
  for (const auto& [user, cert] : per_user)
    if (!cert.decodable) return false;
  return !per_user.empty();
}

OracleCertificate certify(const SideInfoGraph& g, const Codebook& book) {
  const int width = g.num_vertices;
  const std::size_t nw = words_for(width);

  OracleCertificate result;
  for (int user = 1; user <= g.num_vertices; ++user) {
    std::vector<int> side = out_neighbors(g, user);

    // Row space: every code symbol plus one unit row per side vertex.
    std::vector<TrackedRow> pivots;
    std::size_t total_rows = book.symbols.size() + side.size();
    std::size_t cw = (total_rows + 63) / 64;
    std::size_t row_idx = 0;
    auto insert_row = [&](const std::vector<int>& support) {
      TrackedRow row{std::vector<std::uint64_t>(nw, 0), std::vector<std::uint64_t>(cw, 0)};
      for (int v : support) set_bit(row.bits, v - 1);
      row.combo[row_idx / 64] |= std::uint64_t{1} << (row_idx % 64);
      ++row_idx;
      for (const auto& p : pivots) {
        int col = lowest_bit(p.bits);
        if (test_bit(row.bits, col)) {
          xor_into(row.bits, p.bits);
          xor_into(row.combo, p.combo);
        }
      }
      if (!is_zero(row.bits)) pivots.push_back(std::move(row));
    };
    for (const auto& s : book.symbols) insert_row(s.support);
    for (int v : side) insert_row({v});

    TrackedRow target{std::vector<std::uint64_t>(nw, 0), std::vector<std::uint64_t>(cw, 0)};
    set_bit(target.bits, user - 1);
    for (const auto& p : pivots) {
      int col = lowest_bit(p.bits);
      if (test_bit(target.bits, col)) {
        xor_into(target.bits, p.bits);
        xor_into(target.combo, p.combo);
      }
    }

    UserCertificate cert;
    cert.decodable = is_zero(target.bits);
    if (cert.decodable) {
      for (std::size_t r = 0; r < total_rows; ++r) {
        if (!((target.combo[r / 64] >> (r % 64)) & 1)) continue;
        if (r < book.symbols.size())
          cert.witness_symbols.push_back(book.symbols[r].label);
        else
          cert.witness_side.push_back(side[r - book.symbols.size()]);
      }
    }
    result.per_user[user] = std::move(cert);
  }
  return result;
}

RoundtripReport simulate_roundtrip(const SideInfoGraph& g, const Codebook& book, int trials,
                                   std::size_t msg_len, std::uint64_t seed) {
  if (trials < 0 || (trials > 0 && msg_len < 1))
    throw Error(ErrorKind::PreconditionViolation,
                "round-trip simulation needs trials >= 0 and a positive message length");

  RoundtripReport report;
  report.certified = certify(g, book).all_decodable();
  if (!report.certified || trials == 0) return report;

  auto trees = build_all_trees(g);
  auto analysis = analyze_structure(g, trees, false);
  std::vector<DecodeEquation> equations;
  for (int i : g.inner_vertices)
    equations.push_back(derive_z_algorithm2(book, trees, analysis, i));
  report.max_symbols_combined = 1;
  for (const auto& eq : equations)
    report.max_symbols_combined =
        std::max(report.max_symbols_combined, static_cast<int>(eq.combined.size()));

  std::mt19937_64 trial_seeds(seed);
  for (int t = 0; t < trials; ++t) {
    MessageVector msgs = random_messages(g.num_vertices, msg_len, trial_seeds());
    auto tx = transmit(book, msgs);
    MessageVector decoded =
        decode_with_equations(g, book, equations, tx, side_info_from_messages(g, msgs));
    ++report.trials;
    if (decoded == msgs) continue;
    ++report.mismatches;
    for (int v = 1; v <= g.num_vertices; ++v)
      if (decoded.values[v - 1] != msgs.values[v - 1] && report.failures.size() < 16)
        report.failures.push_back({t, v});
  }
  report.match_rate = static_cast<double>(report.trials - report.mismatches) / report.trials;
  return report;
}

namespace {

SideInfoGraph complete_digraph(int n) {
  SideInfoGraph g;
  g.num_vertices = n;
  for (int v = 1; v <= n; ++v) g.inner_vertices.insert(v);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v) g.edges.insert({u, v});
  return g;
}

// Exhaustive scan over every edge subset for one (n, k); only feasible
// for n <= 5 where there are at most 2^20 subsets.
void exhaustive_scan(int n, int k, std::vector<SideInfoGraph>& out) {
  const int m = n * (n - 1);
  std::vector<std::pair<int, int>> edge_of(m);
  std::uint32_t out_mask[6] = {0};
  std::uint32_t in_mask[6] = {0};
  int idx = 0;
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) {
      if (u == v) continue;
      edge_of[idx] = {u, v};
      out_mask[u - 1] |= 1u << idx;
      in_mask[v - 1] |= 1u << idx;
      ++idx;
    }

  const std::uint32_t full_vertices = (1u << n) - 1;
  std::vector<std::vector<int>> adj(n + 1);

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    bool degrees_ok = true;
    for (int v = 0; v < n; ++v)
      if ((mask & out_mask[v]) == 0 || (mask & in_mask[v]) == 0) {
        degrees_ok = false;
        break;
      }
    if (!degrees_ok) continue;

    for (int v = 1; v <= n; ++v) adj[v].clear();
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) adj[edge_of[e].first].push_back(edge_of[e].second);

    auto is_inner_id = [&](int v) { return v <= k; };

    // Condition on cycles through exactly one inner vertex: none allowed.
    bool has_i_cycle = false;
    std::function<bool(int, int, std::uint32_t)> cycle_dfs = [&](int root, int u,
                                                                 std::uint32_t on_path) {
      for (int w : adj[u]) {
        if (w == root) return true;
        if (!is_inner_id(w) && !(on_path & (1u << (w - 1))) &&
            cycle_dfs(root, w, on_path | (1u << (w - 1))))
          return true;
      }
      return false;
    };
    for (int i = 1; i <= k && !has_i_cycle; ++i)
      has_i_cycle = cycle_dfs(i, i, 1u << (i - 1));
    if (has_i_cycle) continue;

    // Exactly one interior-non-inner route per ordered inner pair; the
    // found routes must jointly cover every edge and vertex.
    std::uint64_t covered_edges = 0;
    std::uint32_t covered_vertices = 0;
    bool routes_ok = true;
    for (int a = 1; a <= k && routes_ok; ++a) {
      for (int b = 1; b <= k && routes_ok; ++b) {
        if (a == b) continue;
        int count = 0;
        std::uint64_t path_edges = 0;
        std::uint32_t path_vertices = 0;
        std::function<void(int, std::uint32_t, std::uint64_t)> path_dfs =
            [&](int u, std::uint32_t on_path, std::uint64_t edges_used) {
              if (count > 1) return;
              for (int w : adj[u]) {
                int e = (u - 1) * (n - 1) + (w > u ? w - 2 : w - 1);
                if (w == b) {
                  ++count;
                  if (count == 1) {
                    path_edges = edges_used | (std::uint64_t{1} << e);
                    path_vertices = on_path | (1u << (b - 1));
                  }
                  if (count > 1) return;
                } else if (!is_inner_id(w) && !(on_path & (1u << (w - 1)))) {
                  path_dfs(w, on_path | (1u << (w - 1)),
                           edges_used | (std::uint64_t{1} << e));
                }
              }
            };
        path_dfs(a, 1u << (a - 1), 0);
        if (count != 1) {
          routes_ok = false;
          break;
        }
        covered_edges |= path_edges;
        covered_vertices |= path_vertices;
      }
    }
    if (!routes_ok) continue;
    if (covered_edges != mask || covered_vertices != full_vertices) continue;

    SideInfoGraph g;
    g.num_vertices = n;
    for (int v = 1; v <= k; ++v) g.inner_vertices.insert(v);
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) g.edges.insert(edge_of[e]);
    out.push_back(std::move(g));
  }
}

// One planting attempt: lay down cycle motifs and chains on the
// non-inner pool, give every chunk distinct inner exits, then wire each
// root into territories whose reachable exits partition the other roots.
std::optional<SideInfoGraph> plant(int n, int k, std::mt19937_64& rng) {
  const int nni = n - k;
  std::vector<int> pool(nni);
  std::iota(pool.begin(), pool.end(), k + 1);
  std::shuffle(pool.begin(), pool.end(), rng);

  struct Motif {
    std::vector<std::vector<int>> cycles;  // indices into pool
    int used = 0;
  };
  std::vector<Motif> motifs;
  motifs.push_back({{}, 0});
  if (k >= 4) {
    if (nni >= 2) motifs.push_back({{{0, 1}}, 2});
    if (nni >= 3) motifs.push_back({{{0, 1, 2}}, 3});
    if (nni >= 4) motifs.push_back({{{0, 1, 2, 3}}, 4});
    if (nni >= 3) motifs.push_back({{{0, 1}, {1, 2}}, 3});
    if (nni >= 4) motifs.push_back({{{0, 1}, {1, 2, 3}}, 4});
    if (nni >= 4) motifs.push_back({{{0, 1}, {2, 3}}, 4});
    if (nni >= 4) motifs.push_back({{{0, 1}, {1, 2}, {2, 3}}, 4});
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const Motif* motif = &motifs[0];
  if (motifs.size() > 1 && coin(rng) > 0.15) {
    std::uniform_int_distribution<std::size_t> pick(1, motifs.size() - 1);
    motif = &motifs[pick(rng)];
  }

  std::set<std::pair<int, int>> scaffold;
  std::set<int> on_cycle;
  std::vector<int> cycle_members;
  for (const auto& cycle : motif->cycles)
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int u = pool[cycle[i]];
      int v = pool[cycle[(i + 1) % cycle.size()]];
      scaffold.insert({u, v});
      if (on_cycle.insert(u).second) cycle_members.push_back(u);
    }

  // Free vertices form chains with in-degree at most one; chains may run
  // into a cycle vertex, and cycle vertices may branch into chain heads.
  std::vector<int> free_vertices(pool.begin() + motif->used, pool.end());
  std::set<int> has_in;
  std::map<int, std::vector<int>> continue_to;
  for (std::size_t i = 0; i < free_vertices.size(); ++i) {
    int v = free_vertices[i];
    double roll = coin(rng);
    if (roll < 0.30 && !cycle_members.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, cycle_members.size() - 1);
      int target = cycle_members[pick(rng)];
      scaffold.insert({v, target});
      continue_to[v].push_back(target);
      has_in.insert(target);
    } else if (roll < 0.55 && i + 1 < free_vertices.size()) {
      std::vector<int> later;
      for (std::size_t j = i + 1; j < free_vertices.size(); ++j)
        if (!has_in.count(free_vertices[j])) later.push_back(free_vertices[j]);
      if (!later.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, later.size() - 1);
        int target = later[pick(rng)];
        scaffold.insert({v, target});
        continue_to[v].push_back(target);
        has_in.insert(target);
      }
    }
  }
  if (!cycle_members.empty() && !free_vertices.empty() && coin(rng) < 0.35) {
    std::vector<int> heads;
    for (int v : free_vertices)
      if (!has_in.count(v)) heads.push_back(v);
    if (!heads.empty()) {
      std::uniform_int_distribution<std::size_t> pick_head(0, heads.size() - 1);
      std::uniform_int_distribution<std::size_t> pick_cycle(0, cycle_members.size() - 1);
      int from = cycle_members[pick_cycle(rng)];
      int to = heads[pick_head(rng)];
      scaffold.insert({from, to});
      continue_to[from].push_back(to);
      has_in.insert(to);
    }
  }
  for (const auto& cycle : motif->cycles)
    for (std::size_t i = 0; i < cycle.size(); ++i)
      continue_to[pool[cycle[i]]].push_back(pool[cycle[(i + 1) % cycle.size()]]);

  // Components of the continuation structure share one exit budget so no
  // inner vertex is reachable along two routes within a component.
  std::map<int, int> comp_of;
  for (int v : pool) comp_of[v] = v;
  std::function<int(int)> find_comp = [&](int v) {
    while (comp_of[v] != v) v = comp_of[v] = comp_of[comp_of[v]];
    return v;
  };
  for (const auto& [u, v] : scaffold) comp_of[find_comp(u)] = find_comp(v);

  std::map<int, std::set<int>> used_targets;
  std::map<int, std::vector<int>> exits;
  for (int v : pool) {
    int comp = find_comp(v);
    bool tail = continue_to[v].empty();
    bool on_two_cycle = false;
    for (const auto& cycle : motif->cycles)
      if (cycle.size() == 2 &&
          (pool[cycle[0]] == v || pool[cycle[1]] == v))
        on_two_cycle = true;
    int want;
    if (on_cycle.count(v))
      want = on_two_cycle ? 1 : (coin(rng) < 0.35 ? 0 : 1);
    else if (tail)
      want = coin(rng) < 0.3 ? 2 : 1;
    else
      want = coin(rng) < 0.4 ? 0 : 1;
    std::vector<int> available;
    for (int t = 1; t <= k; ++t)
      if (!used_targets[comp].count(t)) available.push_back(t);
    std::shuffle(available.begin(), available.end(), rng);
    want = std::min(want, static_cast<int>(available.size()));
    for (int i = 0; i < want; ++i) {
      scaffold.insert({v, available[i]});
      exits[v].push_back(available[i]);
      used_targets[comp].insert(available[i]);
    }
    if ((tail || on_two_cycle) && exits[v].empty()) return std::nullopt;
  }

  // Per-vertex sweep: every simple route through non-inner vertices that
  // ends at an inner exit, starting with an empty prefix.
  struct Sweep {
    std::set<int> targets;
    std::set<int> vertices;
    std::set<std::pair<int, int>> edges;
    bool clean = true;
  };
  std::map<int, Sweep> sweeps;
  for (int x : pool) {
    Sweep s;
    std::vector<int> path{x};
    std::set<int> on_path{x};
    std::function<void(int)> dfs = [&](int u) {
      for (int t : exits[u]) {
        if (!s.targets.insert(t).second) s.clean = false;
        for (int pv : path) s.vertices.insert(pv);
        for (std::size_t i = 1; i < path.size(); ++i)
          s.edges.insert({path[i - 1], path[i]});
        s.edges.insert({u, t});
      }
      for (int w : continue_to[u]) {
        if (on_path.count(w)) continue;
        on_path.insert(w);
        path.push_back(w);
        dfs(w);
        path.pop_back();
        on_path.erase(w);
      }
    };
    dfs(x);
    if (!s.clean || s.targets.empty()) return std::nullopt;
    sweeps[x] = std::move(s);
  }

  // Entry wiring: each root may claim territories whose exit sets fit in
  // its remaining uncovered roots and whose sweeps stay vertex-disjoint.
  std::map<int, std::set<int>> uncovered;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (i != j) uncovered[i].insert(j);
  std::map<int, std::set<int>> swept_by_root;
  std::set<std::pair<int, int>> entries;

  auto admissible = [&](int root, int x) {
    const Sweep& s = sweeps[x];
    if (!std::includes(uncovered[root].begin(), uncovered[root].end(), s.targets.begin(),
                       s.targets.end()))
      return false;
    for (int v : s.vertices)
      if (swept_by_root[root].count(v)) return false;
    return true;
  };
  auto take = [&](int root, int x) {
    const Sweep& s = sweeps[x];
    entries.insert({root, x});
    for (int t : s.targets) uncovered[root].erase(t);
    swept_by_root[root].insert(s.vertices.begin(), s.vertices.end());
  };

  std::vector<std::pair<int, int>> candidates;
  for (int i = 1; i <= k; ++i)
    for (int x : pool) candidates.push_back({i, x});
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (const auto& [root, x] : candidates)
    if (coin(rng) < 0.65 && admissible(root, x)) take(root, x);

  // Coverage passes: every pool vertex and every scaffold edge must lie
  // on some claimed territory.
  auto claimed = [&]() {
    std::pair<std::set<int>, std::set<std::pair<int, int>>> result;
    for (const auto& [root, x] : entries) {
      const Sweep& s = sweeps[x];
      result.first.insert(s.vertices.begin(), s.vertices.end());
      result.second.insert(s.edges.begin(), s.edges.end());
    }
    return result;
  };
  for (int v : pool) {
    if (claimed().first.count(v)) continue;
    bool placed = false;
    for (int root = 1; root <= k && !placed; ++root)
      if (admissible(root, v)) {
        take(root, v);
        placed = true;
      }
    if (!placed) return std::nullopt;
  }
  for (bool progress = true; progress;) {
    progress = false;
    auto [cv, ce] = claimed();
    std::vector<std::pair<int, int>> missing;
    for (const auto& e : scaffold)
      if (!ce.count(e)) missing.push_back(e);
    if (missing.empty()) break;
    for (const auto& e : missing) {
      bool placed = false;
      for (int x : pool) {
        if (!sweeps[x].edges.count(e)) continue;
        for (int root = 1; root <= k && !placed; ++root)
          if (admissible(root, x)) {
            take(root, x);
            placed = true;
            progress = true;
          }
        if (placed) break;
      }
    }
    if (!progress) return std::nullopt;
  }

  SideInfoGraph g;
  g.num_vertices = n;
  for (int v = 1; v <= k; ++v) g.inner_vertices.insert(v);
  g.edges = scaffold;
  for (const auto& [root, x] : entries) g.edges.insert({root, x});
  for (int i = 1; i <= k; ++i)
    for (int j : uncovered[i]) g.edges.insert({i, j});

  return validate(g).is_ic_structure ? std::optional<SideInfoGraph>(g) : std::nullopt;
}

}  // namespace

std::vector<SideInfoGraph> enumerate_ic_structures(const EnumerateOptions& opts) {
  if (opts.max_n < 2 || opts.max_n > 8)
    throw Error(ErrorKind::PreconditionViolation,
                "enumeration covers 2 <= max_n <= 8, got " + std::to_string(opts.max_n),
                {{"max_n", opts.max_n}});
  if (opts.k_min < 2 || opts.k_max < opts.k_min)
    throw Error(ErrorKind::PreconditionViolation, "need 2 <= k_min <= k_max");

  std::vector<SideInfoGraph> results;
  for (int n = 2; n <= std::min(5, opts.max_n); ++n) {
    for (int k = std::max(2, opts.k_min); k <= std::min(n, opts.k_max); ++k) {
      if (k == n) {
        results.push_back(complete_digraph(n));
        continue;
      }
      exhaustive_scan(n, k, results);
    }
  }

  if (opts.max_n >= 6) {
    std::vector<std::pair<int, int>> sizes;
    for (int n = 6; n <= opts.max_n; ++n) {
      for (int k = std::max(2, opts.k_min); k <= std::min(n, opts.k_max); ++k) {
        if (k == n) {
          results.push_back(complete_digraph(n));
          continue;
        }
        sizes.push_back({n, k});
      }
    }
    if (!sizes.empty() && opts.budget > 0) {
      std::mt19937_64 rng(opts.seed);
      std::set<std::string> seen;
      std::size_t per_size = opts.budget / sizes.size();
      std::size_t leftover = opts.budget % sizes.size();
      for (std::size_t s = 0; s < sizes.size(); ++s) {
        auto [n, k] = sizes[s];
        std::size_t attempts = per_size + (s < leftover ? 1 : 0);
        std::size_t produced = 0;
        for (std::size_t t = 0; t < attempts; ++t) {
          auto g = plant(n, k, rng);
          if (!g) continue;
          if (seen.insert(serialize_graph(*g)).second) {
            results.push_back(std::move(*g));
            ++produced;
          }
        }
        logf(1, "enumerate: n=%d k=%d attempts=%zu produced=%zu", n, k, attempts, produced);
      }
    }
  }

  std::sort(results.begin(), results.end(), [](const SideInfoGraph& a, const SideInfoGraph& b) {
    if (a.num_vertices != b.num_vertices) return a.num_vertices < b.num_vertices;
    if (a.inner_vertices.size() != b.inner_vertices.size())
      return a.inner_vertices.size() < b.inner_vertices.size();
    return a.edges < b.edges;
  });
  results.erase(std::unique(results.begin(), results.end()), results.end());
  return results;
}

Json certificate_to_json(const OracleCertificate& cert) {
  Json users = Json::object();
  for (const auto& [user, c] : cert.per_user) {
    Json witness_symbols = Json::array();
    for (int label : c.witness_symbols)
      witness_symbols.push_back(label == 0 ? "I" : std::to_string(label));
    users[std::to_string(user)] = {{"decodable", c.decodable},
                                   {"witness_symbols", std::move(witness_symbols)},
                                   {"witness_side", c.witness_side}};
  }
  return Json{{"all_decodable", cert.all_decodable()}, {"per_user", std::move(users)}};
}

Json roundtrip_to_json(const RoundtripReport& report) {
  Json doc;
  doc["certified"] = report.certified;
  doc["trials"] = report.trials;
  doc["mismatches"] = report.mismatches;
  if (report.match_rate)
    doc["match_rate"] = *report.match_rate;
  else
    doc["match_rate"] = nullptr;
  doc["max_symbols_combined"] = report.max_symbols_combined;
  Json failures = Json::array();
  for (const auto& f : report.failures) failures.push_back({{"trial", f.trial}, {"user", f.user}});
  doc["failures"] = std::move(failures);
  return doc;
}

}  // namespace icc
