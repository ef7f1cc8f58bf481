// GF(2) rank certificates, round-trip simulation, and structure
// enumeration used as ground truth by the other suites.
#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "icc/error.hpp"
#include "icc/oracle.hpp"
#include "util.hpp"

using namespace icc;
using icc::test::load_fixture;

namespace {

Codebook encode2(const SideInfoGraph& g) {
  auto trees = build_all_trees(g);
  auto mocgs = find_mocgs(g, find_outer_cycles(g));
  return encode_construction2(g, trees, mocgs, {});
}

SideInfoGraph complete_all_inner(int n) {
  SideInfoGraph g;
  g.num_vertices = n;
  for (int v = 1; v <= n; ++v) g.inner_vertices.insert(v);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v) g.edges.insert({u, v});
  return g;
}

// A certificate is only as good as its witness: recombine the named
// symbols and side-information rows and demand exactly {i}.
void check_witness(const SideInfoGraph& g, const Codebook& book, int user,
                   const UserCertificate& cert) {
  REQUIRE(cert.decodable);
  std::map<int, int> parity;
  for (int label : cert.witness_symbols) {
    const CodeSymbol* s = book.find(label);
    REQUIRE(s != nullptr);
    for (int v : s->support) parity[v] ^= 1;
  }
  for (int v : cert.witness_side) {
    REQUIRE(g.edges.count({user, v}) == 1);
    parity[v] ^= 1;
  }
  std::set<int> leftover;
  for (auto [v, odd] : parity)
    if (odd) leftover.insert(v);
  CHECK(leftover == std::set<int>{user});
}

}  // namespace

TEST_CASE("rank of hand-built matrices") {
  Gf2Matrix m(4);
  CHECK(m.rank() == 0);
  m.add_row({1});
  m.add_row({2});
  m.add_row({3});
  m.add_row({4});
  CHECK(m.rank() == 4);

  Gf2Matrix d(3);
  d.add_row({1, 2});
  d.add_row({2, 3});
  d.add_row({1, 3});  // sum of the first two
  CHECK(d.rank() == 2);

  Gf2Matrix wide(130);  // forces multiple 64-bit words per row
  wide.add_row({1, 130});
  wide.add_row({130});
  wide.add_row({1});
  CHECK(wide.rank() == 2);
}

TEST_CASE("rank is invariant under row shuffling") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    int width = 6 + static_cast<int>(rng() % 60);
    int rows = 3 + static_cast<int>(rng() % 12);
    std::vector<std::vector<int>> supports(rows);
    for (auto& s : supports) {
      for (int v = 1; v <= width; ++v)
        if (rng() % 3 == 0) s.push_back(v);
    }
    Gf2Matrix forward(width);
    for (const auto& s : supports) forward.add_row(s);
    std::shuffle(supports.begin(), supports.end(), rng);
    Gf2Matrix shuffled(width);
    for (const auto& s : supports) shuffled.add_row(s);
    CAPTURE(trial);
    REQUIRE(forward.rank() == shuffled.rank());
  }
}

TEST_CASE("certification on both fixtures, with witnesses that recombine") {
  for (const char* name : {"g1.sig", "ic10.sig"}) {
    CAPTURE(name);
    SideInfoGraph g = load_fixture(name);
    Codebook book = encode2(g);
    OracleCertificate cert = certify(g, book);
    CHECK(cert.all_decodable());
    REQUIRE(static_cast<int>(cert.per_user.size()) == g.num_vertices);
    for (const auto& [user, uc] : cert.per_user) {
      CAPTURE(user);
      check_witness(g, book, user, uc);
    }
  }
}

TEST_CASE("removing the inner symbol breaks an inner user") {
  SideInfoGraph g = load_fixture("g1.sig");
  Codebook book = encode2(g);
  Codebook crippled;
  for (const CodeSymbol& s : book.symbols)
    if (!s.is_inner_symbol()) crippled.symbols.push_back(s);
  OracleCertificate cert = certify(g, crippled);
  CHECK(!cert.all_decodable());
  CHECK(!cert.per_user.at(1).decodable);
}

TEST_CASE("the all-inner complete structure needs one symbol") {
  SideInfoGraph g = complete_all_inner(4);
  REQUIRE(validate(g).is_ic_structure);
  Codebook book = encode2(g);
  CHECK(book.size() == 1);  // N - K + 1 with K = N
  CHECK(certify(g, book).all_decodable());
  RoundtripReport r = simulate_roundtrip(g, book, 20, 2, 8);
  CHECK(r.certified);
  CHECK(r.mismatches == 0);
}

TEST_CASE("round-trip simulation on the 17-vertex fixture") {
  SideInfoGraph g = load_fixture("g1.sig");
  RoundtripReport r = simulate_roundtrip(g, encode2(g), 100, 1, 7);
  CHECK(r.certified);
  CHECK(r.trials == 100);
  CHECK(r.mismatches == 0);
  REQUIRE(r.match_rate.has_value());
  CHECK(*r.match_rate == 1.0);
  CHECK(r.max_symbols_combined == 10);
  CHECK(r.failures.empty());
}

TEST_CASE("an uncertified codebook skips the trials") {
  SideInfoGraph g = load_fixture("g1.sig");
  Codebook book = encode2(g);
  Codebook crippled;
  for (const CodeSymbol& s : book.symbols)
    if (!s.is_inner_symbol()) crippled.symbols.push_back(s);
  RoundtripReport r = simulate_roundtrip(g, crippled, 50, 1, 7);
  CHECK(!r.certified);
  CHECK(r.trials == 0);
  CHECK(!r.match_rate.has_value());
}

TEST_CASE("roundtrip guards its parameters") {
  SideInfoGraph g = complete_all_inner(3);
  Codebook book = encode2(g);
  CHECK_THROWS_AS(simulate_roundtrip(g, book, -1, 1, 0), Error);
  CHECK_THROWS_AS(simulate_roundtrip(g, book, 5, 0, 0), Error);
}

TEST_CASE("exhaustive enumeration counts for the small sizes") {
  EnumerateOptions opts;
  opts.max_n = 5;
  std::vector<SideInfoGraph> all = enumerate_ic_structures(opts);
  std::map<std::pair<int, int>, int> by_size;
  for (const SideInfoGraph& g : all)
    ++by_size[{g.num_vertices, static_cast<int>(g.inner_vertices.size())}];
  CHECK(all.size() == 254);
  CHECK(by_size[{2, 2}] == 1);
  CHECK(by_size[{3, 2}] == 2);
  CHECK(by_size[{3, 3}] == 1);
  CHECK(by_size[{4, 2}] == 6);
  CHECK(by_size[{4, 3}] == 12);
  CHECK(by_size[{4, 4}] == 1);
  CHECK(by_size[{5, 2}] == 24);
  CHECK(by_size[{5, 3}] == 156);
  CHECK(by_size[{5, 4}] == 50);
  CHECK(by_size[{5, 5}] == 1);
  for (const SideInfoGraph& g : all) CHECK(find_outer_cycles(g).empty());
}

TEST_CASE("enumeration is deterministic and in bounds") {
  EnumerateOptions opts;
  opts.max_n = 7;
  opts.budget = 4000;
  opts.seed = 11;
  std::vector<SideInfoGraph> a = enumerate_ic_structures(opts);
  std::vector<SideInfoGraph> b = enumerate_ic_structures(opts);
  CHECK(a == b);
  CHECK(!a.empty());
  std::set<std::tuple<int, std::set<int>, std::set<std::pair<int, int>>>> seen;
  for (const SideInfoGraph& g : a) {
    CHECK(g.num_vertices <= 7);
    CHECK(static_cast<int>(g.inner_vertices.size()) >= 2);
    CHECK(seen.insert({g.num_vertices, g.inner_vertices, g.edges}).second);
  }
}

TEST_CASE("every enumerated structure validates") {
  EnumerateOptions opts;
  opts.max_n = 6;
  opts.budget = 3000;
  opts.seed = 5;
  for (const SideInfoGraph& g : enumerate_ic_structures(opts)) {
    CAPTURE(g.num_vertices);
    REQUIRE(validate(g).is_ic_structure);
  }
}

TEST_CASE("certificate and roundtrip reports serialize") {
  SideInfoGraph g = load_fixture("g1.sig");
  Codebook book = encode2(g);
  Json cert = certificate_to_json(certify(g, book));
  CHECK(cert["all_decodable"] == true);
  Json rt = roundtrip_to_json(simulate_roundtrip(g, book, 10, 1, 2));
  CHECK(rt["certified"] == true);
  CHECK(rt["match_rate"] == 1.0);
}
