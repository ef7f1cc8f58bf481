// Decoding: symbol combinations per inner vertex and full message
// recovery from transmissions plus side information.
#include "icc/decode.hpp"

#include <algorithm>
#include <cassert>

#include "icc/error.hpp"
#include "icc/log.hpp"

namespace icc {

namespace {

std::set<int> root_set(const std::vector<RootedTree>& trees) {
  std::set<int> roots;
  for (const auto& t : trees) roots.insert(t.root);
  return roots;
}

std::vector<int> non_root_tree_vertices(const RootedTree& tree, const std::set<int>& roots) {
  std::vector<int> result;
  for (const auto& [v, depth] : tree.depth_of)
    if (!roots.count(v)) result.push_back(v);
  return result;
}

// XOR of the supports of the combined symbols, as a sorted set.
std::vector<int> xor_supports(const Codebook& book, const std::vector<int>& combined) {
  std::set<int> acc;
  for (int label : combined) {
    const CodeSymbol* s = book.find(label);
    if (s == nullptr)
      throw Error(ErrorKind::BadDocument,
                  "codebook has no symbol labeled " + std::to_string(label),
                  {{"label", label}});
    for (int v : s->support) {
      auto it = acc.find(v);
      if (it == acc.end())
        acc.insert(v);
      else
        acc.erase(it);
    }
  }
  return {acc.begin(), acc.end()};
}

}  // namespace

bool DecodeEquation::decodable_for(const SideInfoGraph& g) const {
  if (std::find(z_support.begin(), z_support.end(), inner) == z_support.end()) return false;
  std::vector<int> known = out_neighbors(g, inner);
  for (int v : z_support) {
    if (v == inner) continue;
    if (std::find(known.begin(), known.end(), v) == known.end()) return false;
  }
  return true;
}

DecodeEquation derive_z_algorithm1(const Codebook& book, const std::vector<RootedTree>& trees,
                                   int i) {
  const RootedTree& tree = tree_for(trees, i);
  std::set<int> roots = root_set(trees);
  DecodeEquation eq;
  eq.inner = i;
  eq.combined.push_back(0);
  for (int v : non_root_tree_vertices(tree, roots)) eq.combined.push_back(v);
  eq.z_support = xor_supports(book, eq.combined);
  return eq;
}

DecodeEquation derive_z_algorithm2(const Codebook& book, const std::vector<RootedTree>& trees,
                                   const StructureAnalysis& analysis, int i) {
  const RootedTree& tree = tree_for(trees, i);
  std::set<int> roots = root_set(trees);
  std::set<int> v_oc = all_outer_cycle_vertices(analysis.outer_cycles);

  DecodeEquation eq;
  eq.inner = i;
  std::set<int> plain;  // tree vertices off the cycles keep their own symbol
  std::set<int> prime;  // cycle groups of tree vertices on the cycles
  for (int v : non_root_tree_vertices(tree, roots)) {
    if (!v_oc.count(v)) {
      plain.insert(v);
      continue;
    }
    eq.v_nic.push_back(v);
    std::set<int> group = group_vertex_set(analysis.outer_cycles, v);
    prime.insert(group.begin(), group.end());
  }
  eq.v_prime.assign(prime.begin(), prime.end());

  for (int v : plain)
    if (prime.count(v))
      logf(1, "decode: user %d combined-set overlap at vertex %d", i, v);
#ifndef NDEBUG
  for (int v : eq.v_prime) {
    std::set<int> group = group_vertex_set(analysis.outer_cycles, v);
    for (int w : group) assert(prime.count(w) != 0);
  }
#endif

  eq.combined.push_back(0);
  std::set<int> labels = plain;
  labels.insert(prime.begin(), prime.end());
  for (int v : labels) eq.combined.push_back(v);
  eq.z_support = xor_supports(book, eq.combined);
  return eq;
}

SideInfoOracle side_info_from_messages(const SideInfoGraph& g, const MessageVector& msgs) {
  return [&g, msgs](int user, int vertex) -> Message {
    if (!g.edges.count({user, vertex}))
      throw Error(ErrorKind::PreconditionViolation,
                  "user " + std::to_string(user) + " holds no side information for vertex " +
                      std::to_string(vertex),
                  {{"user", user}, {"vertex", vertex}});
    if (vertex < 1 || vertex > static_cast<int>(msgs.values.size()))
      throw Error(ErrorKind::IdOutOfRange, "vertex " + std::to_string(vertex) + " out of range");
    return msgs.values[vertex - 1];
  };
}

MessageVector decode_all(const SideInfoGraph& g, const Codebook& book,
                         const std::vector<RootedTree>& trees, const StructureAnalysis& analysis,
                         const std::map<int, Message>& transmissions,
                         const SideInfoOracle& side_info) {
  std::vector<DecodeEquation> equations;
  for (int i : g.inner_vertices)
    equations.push_back(derive_z_algorithm2(book, trees, analysis, i));
  return decode_with_equations(g, book, equations, transmissions, side_info);
}

MessageVector decode_with_equations(const SideInfoGraph& g, const Codebook& book,
                                    const std::vector<DecodeEquation>& equations,
                                    const std::map<int, Message>& transmissions,
                                    const SideInfoOracle& side_info) {
  auto payload_for = [&](int label) -> const Message& {
    auto it = transmissions.find(label);
    if (it == transmissions.end())
      throw Error(ErrorKind::BadDocument,
                  "no transmission for symbol " + std::string(label == 0 ? "I" : "") +
                      (label == 0 ? "" : std::to_string(label)),
                  {{"label", label}});
    return it->second;
  };

  MessageVector out;
  out.values.resize(g.num_vertices);

  for (int j : non_inner_vertices(g)) {
    const CodeSymbol* s = book.find(j);
    if (s == nullptr)
      throw Error(ErrorKind::BadDocument, "codebook has no symbol for vertex " + std::to_string(j),
                  {{"label", j}});
    Message acc = payload_for(j);
    for (int q : s->support) {
      if (q == j) continue;
      if (!g.edges.count({j, q}))
        throw Error(ErrorKind::NotDecodable,
                    "user " + std::to_string(j) + " cannot cancel vertex " + std::to_string(q) +
                        " from its own symbol",
                    {{"user", j}, {"vertex", q}});
      acc = xor_bytes(acc, side_info(j, q));
    }
    out.values[j - 1] = std::move(acc);
  }

  for (const DecodeEquation& eq : equations) {
    int i = eq.inner;
    if (std::find(eq.z_support.begin(), eq.z_support.end(), i) == eq.z_support.end())
      throw Error(ErrorKind::NotDecodable,
                  "the combined symbol for user " + std::to_string(i) +
                      " does not contain the user's own message",
                  {{"user", i}, {"z_support", eq.z_support}});
    Message acc = payload_for(0);
    for (std::size_t k = 1; k < eq.combined.size(); ++k)
      acc = xor_bytes(acc, payload_for(eq.combined[k]));
    for (int v : eq.z_support) {
      if (v == i) continue;
      if (!g.edges.count({i, v}))
        throw Error(ErrorKind::NotDecodable,
                    "user " + std::to_string(i) + " lacks side information for vertex " +
                        std::to_string(v),
                    {{"user", i}, {"vertex", v}});
      acc = xor_bytes(acc, side_info(i, v));
    }
    out.values[i - 1] = std::move(acc);
  }
  return out;
}

Json equation_to_json(const DecodeEquation& eq) {
  Json doc;
  doc["inner"] = eq.inner;
  Json combined = Json::array();
  for (int label : eq.combined) combined.push_back(label == 0 ? "I" : std::to_string(label));
  doc["combined"] = std::move(combined);
  doc["z_support"] = eq.z_support;
  doc["v_nic"] = eq.v_nic;
  doc["v_prime"] = eq.v_prime;
  return doc;
}

}  // namespace icc
