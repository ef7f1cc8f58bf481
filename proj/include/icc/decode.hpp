// Decoding: per-inner-vertex symbol combinations, their XOR supports,
// and full message recovery from transmissions plus side information.
#pragma once

#include <functional>
#include <map>
#include <vector>

#include "encode.hpp"

namespace icc {

struct DecodeEquation {
  int inner = 0;
  std::vector<int> combined;   // symbol labels XORed, 0 (= W_I) always first
  std::vector<int> z_support;  // symmetric difference of the combined supports
  std::vector<int> v_nic;      // tree vertices lying on outer cycles
  std::vector<int> v_prime;    // union of their cycle groups

  bool decodable_for(const SideInfoGraph& g) const;
};

// Baseline combination: W_I plus every symbol of a tree vertex.
DecodeEquation derive_z_algorithm1(const Codebook& book, const std::vector<RootedTree>& trees,
                                   int i);

// Cycle-aware combination: tree vertices on outer cycles are replaced by
// the whole of their cycle groups.
DecodeEquation derive_z_algorithm2(const Codebook& book, const std::vector<RootedTree>& trees,
                                   const StructureAnalysis& analysis, int i);

// x_v provider for user u; only vertices in N+(u) may be requested.
using SideInfoOracle = std::function<Message(int user, int vertex)>;

SideInfoOracle side_info_from_messages(const SideInfoGraph& g, const MessageVector& msgs);

// Recover every message: non-inner vertices from their own symbol, inner
// vertices from the cycle-aware combination.
MessageVector decode_all(const SideInfoGraph& g, const Codebook& book,
                         const std::vector<RootedTree>& trees, const StructureAnalysis& analysis,
                         const std::map<int, Message>& transmissions,
                         const SideInfoOracle& side_info);

// Same recovery with the per-inner-vertex equations already derived, so
// repeated decodes of one structure skip the derivation.
MessageVector decode_with_equations(const SideInfoGraph& g, const Codebook& book,
                                    const std::vector<DecodeEquation>& equations,
                                    const std::map<int, Message>& transmissions,
                                    const SideInfoOracle& side_info);

Json equation_to_json(const DecodeEquation& eq);

}  // namespace icc
