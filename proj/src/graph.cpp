// Graph parsing, serialization, neighborhoods, and message vectors.
#include "icc/graph.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "icc/error.hpp"

namespace icc {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

int parse_id(const std::string& token, int line_no) {
  try {
    size_t pos = 0;
    int value = std::stoi(token, &pos);
    if (pos != token.size() || value < 1) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse,
                "line " + std::to_string(line_no) + ": bad vertex id '" + token + "'",
                {{"line", line_no}, {"token", token}});
  }
}

void check_range(int id, int n, int line_no) {
  if (id > n)
    throw Error(ErrorKind::IdOutOfRange,
                "line " + std::to_string(line_no) + ": vertex id " + std::to_string(id) +
                    " exceeds declared n=" + std::to_string(n),
                {{"line", line_no}, {"id", id}, {"n", n}});
}

}  // namespace

SideInfoGraph parse_graph(const std::string& text) {
  SideInfoGraph g;
  int declared_n = 0;
  int declared_n_line = 0;
  int inner_line = 0;
  int max_id = 0;
  std::vector<std::pair<std::pair<int, int>, int>> edge_lines;
  std::vector<std::pair<int, int>> inner_ids;  // (id, line)

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;

    std::istringstream tokens(line);
    std::string directive;
    tokens >> directive;
    if (directive == "n:") {
      if (declared_n_line != 0)
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": duplicate n: line",
                    {{"line", line_no}});
      std::string value;
      if (!(tokens >> value) || (tokens >> std::ws, !tokens.eof()))
        throw Error(ErrorKind::Parse,
                    "line " + std::to_string(line_no) + ": expected 'n: <int>'",
                    {{"line", line_no}});
      declared_n = parse_id(value, line_no);
      declared_n_line = line_no;
    } else if (directive == "inner:") {
      if (inner_line != 0)
        throw Error(ErrorKind::Parse,
                    "line " + std::to_string(line_no) + ": duplicate inner: line",
                    {{"line", line_no}});
      inner_line = line_no;
      std::string token;
      while (tokens >> token) inner_ids.emplace_back(parse_id(token, line_no), line_no);
      if (inner_ids.empty())
        throw Error(ErrorKind::Parse,
                    "line " + std::to_string(line_no) + ": inner: line lists no vertices",
                    {{"line", line_no}});
    } else if (directive == "edge:") {
      std::string a, b;
      if (!(tokens >> a >> b) || (tokens >> std::ws, !tokens.eof()))
        throw Error(ErrorKind::Parse,
                    "line " + std::to_string(line_no) + ": expected 'edge: <u> <v>'",
                    {{"line", line_no}});
      int u = parse_id(a, line_no);
      int v = parse_id(b, line_no);
      if (u == v)
        throw Error(ErrorKind::SelfLoop,
                    "line " + std::to_string(line_no) + ": self-loop at vertex " +
                        std::to_string(u),
                    {{"line", line_no}, {"vertex", u}});
      edge_lines.push_back({{u, v}, line_no});
      max_id = std::max({max_id, u, v});
    } else {
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(line_no) + ": unrecognized directive '" + directive +
                      "'",
                  {{"line", line_no}, {"directive", directive}});
    }
  }

  if (inner_line == 0)
    throw Error(ErrorKind::MissingInnerSet, "document has no inner: line");

  for (const auto& [id, line] : inner_ids) max_id = std::max(max_id, id);
  g.num_vertices = declared_n != 0 ? declared_n : max_id;
  if (g.num_vertices == 0)
    throw Error(ErrorKind::Parse, "document declares no vertices");

  for (const auto& [id, line] : inner_ids) {
    check_range(id, g.num_vertices, line);
    if (!g.inner_vertices.insert(id).second)
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(line) + ": duplicate inner vertex " +
                      std::to_string(id),
                  {{"line", line}, {"vertex", id}});
  }
  for (const auto& [edge, line] : edge_lines) {
    check_range(edge.first, g.num_vertices, line);
    check_range(edge.second, g.num_vertices, line);
    if (!g.edges.insert(edge).second)
      throw Error(ErrorKind::DuplicateEdge,
                  "line " + std::to_string(line) + ": duplicate edge " +
                      std::to_string(edge.first) + " -> " + std::to_string(edge.second),
                  {{"line", line}, {"edge", {edge.first, edge.second}}});
  }
  return g;
}

std::string serialize_graph(const SideInfoGraph& g) {
  std::ostringstream out;
  out << "n: " << g.num_vertices << "\n";
  out << "inner:";
  for (int v : g.inner_vertices) out << " " << v;
  out << "\n";
  for (const auto& [u, v] : g.edges) out << "edge: " << u << " " << v << "\n";
  return out.str();
}

Json graph_to_json(const SideInfoGraph& g) {
  Json doc;
  doc["n"] = g.num_vertices;
  doc["inner"] = g.inner_vertices;
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  return doc;
}

SideInfoGraph graph_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("inner") || !doc.contains("edges"))
    throw Error(ErrorKind::BadDocument, "graph document needs n, inner, and edges");
  SideInfoGraph g;
  if (!doc["n"].is_number_integer() || doc["n"].get<int>() < 1)
    throw Error(ErrorKind::BadDocument, "graph n must be a positive integer");
  g.num_vertices = doc["n"].get<int>();
  if (!doc["inner"].is_array() || doc["inner"].empty())
    throw Error(ErrorKind::MissingInnerSet, "graph inner set is missing or empty");
  for (const auto& item : doc["inner"]) {
    int id = item.get<int>();
    if (id < 1 || id > g.num_vertices)
      throw Error(ErrorKind::IdOutOfRange, "inner vertex " + std::to_string(id) + " out of range",
                  {{"id", id}, {"n", g.num_vertices}});
    if (!g.inner_vertices.insert(id).second)
      throw Error(ErrorKind::BadDocument, "duplicate inner vertex " + std::to_string(id));
  }
  for (const auto& item : doc["edges"]) {
    if (!item.is_array() || item.size() != 2)
      throw Error(ErrorKind::BadDocument, "edges must be [u, v] pairs");
    int u = item[0].get<int>();
    int v = item[1].get<int>();
    if (u < 1 || u > g.num_vertices || v < 1 || v > g.num_vertices)
      throw Error(ErrorKind::IdOutOfRange,
                  "edge endpoint out of range: " + std::to_string(u) + " -> " + std::to_string(v),
                  {{"edge", {u, v}}, {"n", g.num_vertices}});
    if (u == v)
      throw Error(ErrorKind::SelfLoop, "self-loop at vertex " + std::to_string(u),
                  {{"vertex", u}});
    if (!g.edges.insert({u, v}).second)
      throw Error(ErrorKind::DuplicateEdge,
                  "duplicate edge " + std::to_string(u) + " -> " + std::to_string(v),
                  {{"edge", {u, v}}});
  }
  return g;
}

std::vector<int> out_neighbors(const SideInfoGraph& g, int q) {
  if (q < 1 || q > g.num_vertices)
    throw Error(ErrorKind::IdOutOfRange, "vertex " + std::to_string(q) + " out of range",
                {{"id", q}, {"n", g.num_vertices}});
  std::vector<int> result;
  for (auto it = g.edges.lower_bound({q, 0}); it != g.edges.end() && it->first == q; ++it)
    result.push_back(it->second);
  return result;
}

std::vector<int> in_neighbors(const SideInfoGraph& g, int q) {
  if (q < 1 || q > g.num_vertices)
    throw Error(ErrorKind::IdOutOfRange, "vertex " + std::to_string(q) + " out of range",
                {{"id", q}, {"n", g.num_vertices}});
  std::vector<int> result;
  for (const auto& [u, v] : g.edges)
    if (v == q) result.push_back(u);
  return result;
}

bool is_inner(const SideInfoGraph& g, int v) { return g.inner_vertices.count(v) != 0; }

std::vector<int> non_inner_vertices(const SideInfoGraph& g) {
  std::vector<int> result;
  for (int v = 1; v <= g.num_vertices; ++v)
    if (!is_inner(g, v)) result.push_back(v);
  return result;
}

Message xor_bytes(const Message& a, const Message& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::LengthMismatch, "cannot XOR messages of different lengths",
                {{"lhs", a.size()}, {"rhs", b.size()}});
  Message out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

MessageVector random_messages(int n, std::size_t len, std::uint64_t seed) {
  if (n < 1 || len < 1)
    throw Error(ErrorKind::PreconditionViolation, "need n >= 1 and len >= 1 for messages");
  std::mt19937_64 rng(seed);
  MessageVector msgs;
  msgs.values.resize(n);
  for (auto& m : msgs.values) {
    m.resize(len);
    for (auto& byte : m) byte = static_cast<std::uint8_t>(rng() & 0xff);
  }
  return msgs;
}

std::string to_hex(const Message& m) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(m.size() * 2);
  for (auto byte : m) {
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0xf]);
  }
  return out;
}

Message from_hex(const std::string& s) {
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrorKind::BadDocument, std::string("bad hex digit '") + c + "'");
  };
  if (s.size() % 2 != 0)
    throw Error(ErrorKind::BadDocument, "hex string has odd length", {{"length", s.size()}});
  Message out(s.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(nibble(s[2 * i]) << 4 | nibble(s[2 * i + 1]));
  return out;
}

Json messages_to_json(const MessageVector& msgs) {
  Json arr = Json::array();
  for (const auto& m : msgs.values) arr.push_back(to_hex(m));
  return Json{{"messages", std::move(arr)}};
}

MessageVector messages_from_json(const Json& doc, int expected_n) {
  if (!doc.is_object() || !doc.contains("messages") || !doc["messages"].is_array())
    throw Error(ErrorKind::BadDocument, "messages document needs a messages array");
  MessageVector msgs;
  for (const auto& item : doc["messages"]) msgs.values.push_back(from_hex(item.get<std::string>()));
  if (expected_n >= 0 && static_cast<int>(msgs.values.size()) != expected_n)
    throw Error(ErrorKind::LengthMismatch,
                "expected " + std::to_string(expected_n) + " messages, got " +
                    std::to_string(msgs.values.size()),
                {{"expected", expected_n}, {"got", msgs.values.size()}});
  if (msgs.values.empty())
    throw Error(ErrorKind::BadDocument, "messages document is empty");
  for (const auto& m : msgs.values)
    if (m.size() != msgs.values.front().size() || m.empty())
      throw Error(ErrorKind::LengthMismatch, "messages must share one positive byte length");
  return msgs;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::MissingInnerSet: return "MissingInnerSet";
    case ErrorKind::IdOutOfRange: return "IdOutOfRange";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::NotInnerVertex: return "NotInnerVertex";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::IPathNotUnique: return "IPathNotUnique";
    case ErrorKind::VertexNotOnAnyCycle: return "VertexNotOnAnyCycle";
    case ErrorKind::CcvTie: return "CcvTie";
    case ErrorKind::PreCentralDuplicate: return "PreCentralDuplicate";
    case ErrorKind::OuterCyclesPresent: return "OuterCyclesPresent";
    case ErrorKind::SelectionConflict: return "SelectionConflict";
    case ErrorKind::NotDecodable: return "NotDecodable";
    case ErrorKind::NotIcStructure: return "NotIcStructure";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::BadDocument: return "BadDocument";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace icc
