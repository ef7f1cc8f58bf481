// Side-information graph core: the graph type, file/JSON parsing and
// serialization, neighborhoods, and message vectors over GF(2).
#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace icc {

using Json = nlohmann::ordered_json;

// Directed graph over vertex ids 1..num_vertices. An edge (u, v) means
// user u already holds message x_v as side information. inner_vertices
// is the designated set V_I; everything else is non-inner.
struct SideInfoGraph {
  int num_vertices = 0;
  std::set<std::pair<int, int>> edges;
  std::set<int> inner_vertices;

  bool operator==(const SideInfoGraph&) const = default;
};

SideInfoGraph parse_graph(const std::string& text);
std::string serialize_graph(const SideInfoGraph& g);
Json graph_to_json(const SideInfoGraph& g);
SideInfoGraph graph_from_json(const Json& doc);

// Ascending out-neighborhood of q; errors if q is outside 1..N.
std::vector<int> out_neighbors(const SideInfoGraph& g, int q);
std::vector<int> in_neighbors(const SideInfoGraph& g, int q);
bool is_inner(const SideInfoGraph& g, int v);
std::vector<int> non_inner_vertices(const SideInfoGraph& g);

// One message per vertex, all octet strings of equal length; XOR of two
// messages is componentwise, modelling a field of characteristic 2.
using Message = std::vector<std::uint8_t>;

struct MessageVector {
  std::vector<Message> values;  // values[v - 1] is the message of vertex v

  bool operator==(const MessageVector&) const = default;
};

Message xor_bytes(const Message& a, const Message& b);
MessageVector random_messages(int n, std::size_t len, std::uint64_t seed);
Json messages_to_json(const MessageVector& msgs);
MessageVector messages_from_json(const Json& doc, int expected_n);
std::string to_hex(const Message& m);
Message from_hex(const std::string& s);

}  // namespace icc
