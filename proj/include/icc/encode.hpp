// Index-code construction: one XOR symbol per non-inner vertex plus one
// inner symbol, with cycle-aware support rules and pre-central selection.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "cycles.hpp"

namespace icc {

// label 0 denotes the inner symbol W_I; any other label is the non-inner
// vertex the symbol is transmitted for.
struct CodeSymbol {
  int label = 0;
  std::vector<int> support;  // ascending vertex ids XORed together

  bool is_inner_symbol() const { return label == 0; }
  std::string label_string() const { return label == 0 ? "I" : std::to_string(label); }
};

struct Codebook {
  std::vector<CodeSymbol> symbols;         // inner symbol first, then ascending
  std::map<int, std::vector<int>> choices;  // ccv -> selected pre-central ids

  const CodeSymbol* find(int label) const;
  const CodeSymbol& inner_symbol() const;
  std::size_t size() const { return symbols.size(); }
};

struct SelectionOverrides {
  std::map<int, std::vector<int>> by_ccv;
};

// Baseline construction: W_I over the inner set, and {j} with the whole
// out-neighborhood for each non-inner j. Rejects graphs with outer cycles.
Codebook encode_construction1(const SideInfoGraph& g, const std::vector<RootedTree>& trees);

// Same supports without the outer-cycle guard; used where the baseline
// formula is applied to cyclic structures on purpose.
Codebook construction1_supports(const SideInfoGraph& g);

// Cycle-aware construction: out-neighbors on outer cycles are excluded
// from plain symbols and reintroduced group-wise, with one selected
// pre-central vertex per even-cycle-count group omitting the central
// vertex (two per odd-count group that shares a cycle with another).
Codebook encode_construction2(const SideInfoGraph& g, const std::vector<RootedTree>& trees,
                              const std::vector<Mocg>& mocgs,
                              const SelectionOverrides& overrides = {});

// XOR the messages in each symbol's support; keyed by symbol label.
std::map<int, Message> transmit(const Codebook& book, const MessageVector& msgs);

Json codebook_to_json(const Codebook& book);
Codebook codebook_from_json(const Json& doc);
Json transmissions_to_json(const std::map<int, Message>& tx);
std::map<int, Message> transmissions_from_json(const Json& doc);

}  // namespace icc
