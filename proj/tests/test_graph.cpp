// Graph parsing, serialization, neighborhoods, and GF(2) message helpers.
#include <set>
#include <string>

#include "doctest.h"
#include "icc/error.hpp"
#include "icc/graph.hpp"

using namespace icc;

namespace {

const char* kSmall =
    "n: 5\n"
    "inner: 1 2\n"
    "edge: 1 3\n"
    "edge: 3 2\n"
    "edge: 2 4\n"
    "edge: 4 1\n"
    "edge: 2 5\n"
    "edge: 5 1\n";

bool throws_kind(ErrorKind want, const std::string& text) {
  try {
    parse_graph(text);
  } catch (const Error& e) {
    return e.kind == want;
  }
  return false;
}

}  // namespace

TEST_CASE("parse_graph reads the line format") {
  SideInfoGraph g = parse_graph(kSmall);
  CHECK(g.num_vertices == 5);
  CHECK(g.inner_vertices == std::set<int>{1, 2});
  CHECK(g.edges.size() == 6);
  CHECK(g.edges.count({1, 3}) == 1);
  CHECK(g.edges.count({5, 1}) == 1);
  CHECK(g.edges.count({3, 1}) == 0);
}

TEST_CASE("parse_graph skips comments and blank lines") {
  SideInfoGraph g = parse_graph("# header\n\nn: 3\ninner: 1\n# mid\nedge: 1 2\nedge: 2 3\n");
  CHECK(g.num_vertices == 3);
  CHECK(g.edges.size() == 2);
}

TEST_CASE("parse_graph infers n from the largest id when no n: line is given") {
  SideInfoGraph g = parse_graph("inner: 1\nedge: 1 2\nedge: 2 3\n");
  CHECK(g.num_vertices == 3);
  CHECK(g.inner_vertices == std::set<int>{1});
}

TEST_CASE("parse_graph rejects malformed input") {
  CHECK(throws_kind(ErrorKind::MissingInnerSet, "n: 3\nedge: 1 2\n"));
  CHECK(throws_kind(ErrorKind::Parse, "n: 3\ninner: 1\nbogus: 2\n"));
  CHECK(throws_kind(ErrorKind::Parse, "n: 3\nn: 4\ninner: 1\n"));
  CHECK(throws_kind(ErrorKind::Parse, "n: 3\ninner: 1\nedge: 0 2\n"));
  CHECK(throws_kind(ErrorKind::Parse, "n: 3\ninner: 1\nedge: x 2\n"));
  CHECK(throws_kind(ErrorKind::IdOutOfRange, "n: 3\ninner: 1\nedge: 1 4\n"));
  CHECK(throws_kind(ErrorKind::IdOutOfRange, "n: 3\ninner: 9\nedge: 1 2\n"));
  CHECK(throws_kind(ErrorKind::SelfLoop, "n: 3\ninner: 1\nedge: 2 2\n"));
  CHECK(throws_kind(ErrorKind::DuplicateEdge, "n: 3\ninner: 1\nedge: 1 2\nedge: 1 2\n"));
}

TEST_CASE("serialize then parse is the identity") {
  SideInfoGraph g = parse_graph(kSmall);
  CHECK(parse_graph(serialize_graph(g)) == g);
}

TEST_CASE("JSON form round-trips") {
  SideInfoGraph g = parse_graph(kSmall);
  Json doc = graph_to_json(g);
  CHECK(doc["n"] == 5);
  CHECK(doc["inner"] == Json::array({1, 2}));
  CHECK(graph_from_json(doc) == g);
}

TEST_CASE("graph_from_json validates its shape") {
  CHECK_THROWS_AS(graph_from_json(Json{{"inner", {1}}}), Error);
  CHECK_THROWS_AS(
      graph_from_json(Json{{"n", 3}, {"inner", {1}}, {"edges", {{1, 2, 3}}}}), Error);
}

TEST_CASE("neighborhoods come back sorted") {
  SideInfoGraph g = parse_graph(kSmall);
  CHECK(out_neighbors(g, 2) == std::vector<int>{4, 5});
  CHECK(out_neighbors(g, 4) == std::vector<int>{1});
  CHECK(out_neighbors(g, 3) == std::vector<int>{2});
  CHECK(in_neighbors(g, 1) == std::vector<int>{4, 5});
  CHECK(in_neighbors(g, 3) == std::vector<int>{1});
  CHECK_THROWS_AS(out_neighbors(g, 0), Error);
  CHECK_THROWS_AS(out_neighbors(g, 6), Error);
}

TEST_CASE("inner membership helpers") {
  SideInfoGraph g = parse_graph(kSmall);
  CHECK(is_inner(g, 1));
  CHECK(!is_inner(g, 3));
  CHECK(non_inner_vertices(g) == std::vector<int>{3, 4, 5});
}

TEST_CASE("xor_bytes is componentwise and self-inverse") {
  Message a{0x0f, 0xf0, 0xaa};
  Message b{0x01, 0x10, 0xaa};
  Message c = xor_bytes(a, b);
  CHECK(c == Message{0x0e, 0xe0, 0x00});
  CHECK(xor_bytes(c, b) == a);
  CHECK_THROWS_AS(xor_bytes(a, Message{0x00}), Error);
}

TEST_CASE("random_messages is deterministic per seed") {
  MessageVector a = random_messages(6, 4, 99);
  MessageVector b = random_messages(6, 4, 99);
  MessageVector c = random_messages(6, 4, 100);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.values.size() == 6);
  for (const Message& m : a.values) CHECK(m.size() == 4);
}

TEST_CASE("hex encoding round-trips") {
  Message m{0x00, 0xff, 0x3c};
  CHECK(to_hex(m) == "00ff3c");
  CHECK(from_hex("00ff3c") == m);
  CHECK_THROWS_AS(from_hex("0g"), Error);
  CHECK_THROWS_AS(from_hex("abc"), Error);
}

TEST_CASE("message JSON round-trips and checks the count") {
  MessageVector msgs = random_messages(4, 2, 7);
  Json doc = messages_to_json(msgs);
  CHECK(messages_from_json(doc, 4) == msgs);
  CHECK_THROWS_AS(messages_from_json(doc, 5), Error);
}
