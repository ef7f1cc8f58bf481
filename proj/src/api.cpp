// Document pipeline shared by the CLI and the python module.
#include "icc/api.hpp"

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "icc/cycles.hpp"
#include "icc/decode.hpp"
#include "icc/error.hpp"
#include "icc/validate.hpp"

namespace icc {
namespace api {

namespace {

constexpr const char* kBundledExample = R"(# 17-vertex side-information graph with inner set {1..6}.
# Three outer cycles: {8,9,10}, {10,13}, {15,16}; one interlinked group
# centered at 10 with pre-central vertices {9,13}.
n: 17
inner: 1 2 3 4 5 6
edge: 1 7
edge: 1 14
edge: 2 1
edge: 2 5
edge: 2 13
edge: 3 1
edge: 3 4
edge: 3 6
edge: 3 15
edge: 4 1
edge: 4 2
edge: 4 3
edge: 4 5
edge: 4 6
edge: 5 1
edge: 5 2
edge: 5 12
edge: 6 1
edge: 6 17
edge: 7 8
edge: 8 3
edge: 8 9
edge: 9 10
edge: 10 8
edge: 10 11
edge: 10 13
edge: 11 4
edge: 12 10
edge: 13 6
edge: 13 10
edge: 14 16
edge: 15 2
edge: 15 16
edge: 16 5
edge: 16 15
edge: 17 3
edge: 17 4
edge: 17 15
)";

struct ValidStructure {
  SideInfoGraph g;
  ValidationReport report;
  std::vector<RootedTree> trees;
};

ValidStructure require_valid(const Json& graph_doc) {
  ValidStructure out;
  out.g = graph_from_json(graph_doc);
  out.report = validate(out.g);
  if (!out.report.is_ic_structure)
    throw Error(ErrorKind::NotIcStructure, "graph is not a valid structure",
                report_to_json(out.report));
  out.trees = build_all_trees(out.g);
  return out;
}

SelectionOverrides overrides_from_json(const Json& selections) {
  SelectionOverrides o;
  if (selections.is_null()) return o;
  if (!selections.is_object())
    throw Error(ErrorKind::BadDocument, "selections must be an object");
  for (const auto& [key, value] : selections.items()) {
    int ccv = 0;
    std::size_t pos = 0;
    try {
      ccv = std::stoi(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || ccv < 1)
      throw Error(ErrorKind::BadDocument, "selection key is not a vertex id: " + key);
    if (!value.is_array())
      throw Error(ErrorKind::BadDocument, "selection for " + key + " must be an array");
    std::vector<int> picks;
    for (const auto& e : value) {
      if (!e.is_number_integer())
        throw Error(ErrorKind::BadDocument, "selection for " + key + " has a non-integer entry");
      picks.push_back(e.get<int>());
    }
    o.by_ccv[ccv] = std::move(picks);
  }
  return o;
}

std::vector<DecodeEquation> derive_all_equations(const Codebook& book,
                                                 const std::vector<RootedTree>& trees,
                                                 const StructureAnalysis& analysis,
                                                 const SideInfoGraph& g) {
  std::vector<DecodeEquation> equations;
  for (int i : std::set<int>(g.inner_vertices.begin(), g.inner_vertices.end()))
    equations.push_back(derive_z_algorithm2(book, trees, analysis, i));
  return equations;
}

bool scalar_array(const Json& a) {
  for (const auto& e : a)
    if (e.is_object() || e.is_array()) return false;
  return true;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_node(const Json& node, int depth, const std::string& label, std::ostringstream& out) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (node.is_object()) {
    if (!label.empty()) out << pad << label << ":\n";
    int child_depth = label.empty() ? depth : depth + 1;
    for (auto it = node.begin(); it != node.end(); ++it)
      render_node(it.value(), child_depth, it.key(), out);
  } else if (node.is_array() && !scalar_array(node)) {
    out << pad << label << ":\n";
    int idx = 0;
    for (const auto& e : node) render_node(e, depth + 1, "[" + std::to_string(idx++) + "]", out);
  } else if (node.is_array()) {
    out << pad << label << ": [";
    bool first = true;
    for (const auto& e : node) {
      if (!first) out << ", ";
      out << scalar_text(e);
      first = false;
    }
    out << "]\n";
  } else {
    out << pad << label << ": " << scalar_text(node) << "\n";
  }
}

}  // namespace

Json graph_document(const std::string& text) { return graph_to_json(parse_graph(text)); }

Json validate_document(const Json& graph_doc) {
  return report_to_json(validate(graph_from_json(graph_doc)));
}

Json analyze_document(const Json& graph_doc) {
  ValidStructure v = require_valid(graph_doc);
  return analysis_to_json(analyze_structure(v.g, v.trees, true));
}

Json encode_document(const Json& graph_doc, int construction, const Json& selections) {
  ValidStructure v = require_valid(graph_doc);
  if (construction == 1) return codebook_to_json(encode_construction1(v.g, v.trees));
  if (construction != 2)
    throw Error(ErrorKind::Usage, "construction must be 1 or 2",
                Json{{"construction", construction}});
  StructureAnalysis analysis = analyze_structure(v.g, v.trees, false);
  return codebook_to_json(
      encode_construction2(v.g, v.trees, analysis.mocgs, overrides_from_json(selections)));
}

Json decode_document(const Json& graph_doc, const Json& codebook_doc,
                     const Json& transmissions_doc, const Json& messages_doc) {
  ValidStructure v = require_valid(graph_doc);
  Codebook book = codebook_from_json(codebook_doc);
  std::map<int, Message> tx = transmissions_from_json(transmissions_doc);
  StructureAnalysis analysis = analyze_structure(v.g, v.trees, false);
  std::vector<DecodeEquation> equations = derive_all_equations(book, v.trees, analysis, v.g);

  Json out;
  Json eqs = Json::array();
  for (const auto& eq : equations) eqs.push_back(equation_to_json(eq));
  out["equations"] = std::move(eqs);
  out["recovered"] = nullptr;
  if (!messages_doc.is_null()) {
    MessageVector msgs = messages_from_json(messages_doc, v.g.num_vertices);
    MessageVector recovered =
        decode_with_equations(v.g, book, equations, tx, side_info_from_messages(v.g, msgs));
    out["recovered"] = messages_to_json(recovered)["messages"];
  }
  return out;
}

Json verify_document(const Json& graph_doc, int trials, std::uint64_t seed, int msg_len) {
  if (trials < 0 || msg_len < 1)
    throw Error(ErrorKind::Usage, "trials must be >= 0 and msg-len >= 1",
                Json{{"trials", trials}, {"msg_len", msg_len}});
  ValidStructure v = require_valid(graph_doc);
  StructureAnalysis analysis = analyze_structure(v.g, v.trees, false);
  Codebook book = encode_construction2(v.g, v.trees, analysis.mocgs);
  OracleCertificate cert = certify(v.g, book);
  RoundtripReport rt = simulate_roundtrip(v.g, book, trials, static_cast<std::size_t>(msg_len), seed);
  Json out;
  out["certificate"] = certificate_to_json(cert);
  out["roundtrip"] = roundtrip_to_json(rt);
  return out;
}

Json enumerate_document(const EnumerateOptions& opts) {
  std::vector<SideInfoGraph> graphs = enumerate_ic_structures(opts);
  Json entries = Json::array();
  std::map<std::pair<int, int>, std::pair<int, int>> by_size;  // (n,k) -> (count, cyclic)
  int with_cycles = 0;
  for (const auto& g : graphs) {
    bool cyclic = !find_outer_cycles(g).empty();
    int n = g.num_vertices;
    int k = static_cast<int>(g.inner_vertices.size());
    auto& slot = by_size[{n, k}];
    slot.first += 1;
    if (cyclic) {
      slot.second += 1;
      ++with_cycles;
    }
    Json entry;
    entry["n"] = n;
    entry["k"] = k;
    entry["has_outer_cycles"] = cyclic;
    entry["graph"] = graph_to_json(g);
    entry["text"] = serialize_graph(g);
    entries.push_back(std::move(entry));
  }
  Json sizes = Json::array();
  for (const auto& [nk, cc] : by_size) {
    Json row;
    row["n"] = nk.first;
    row["k"] = nk.second;
    row["count"] = cc.first;
    row["with_outer_cycles"] = cc.second;
    sizes.push_back(std::move(row));
  }
  Json summary;
  summary["count"] = static_cast<int>(graphs.size());
  summary["with_outer_cycles"] = with_cycles;
  summary["by_size"] = std::move(sizes);
  Json out;
  out["summary"] = std::move(summary);
  out["graphs"] = std::move(entries);
  return out;
}

Json demo_document() {
  SideInfoGraph g = parse_graph(kBundledExample);
  Json out;
  out["graph"] = graph_to_json(g);
  out["validation"] = report_to_json(validate(g));
  std::vector<RootedTree> trees = build_all_trees(g);
  StructureAnalysis analysis = analyze_structure(g, trees, true);
  out["analysis"] = analysis_to_json(analysis);
  Codebook book = encode_construction2(g, trees, analysis.mocgs);
  out["codebook"] = codebook_to_json(book);
  Json eqs = Json::array();
  for (const auto& eq : derive_all_equations(book, trees, analysis, g))
    eqs.push_back(equation_to_json(eq));
  out["equations"] = std::move(eqs);
  out["roundtrip"] = roundtrip_to_json(simulate_roundtrip(g, book, 25, 4, 1));
  return out;
}

Json error_to_json(const Error& e) {
  Json body;
  body["kind"] = to_string(e.kind);
  body["message"] = e.what();
  body["detail"] = e.detail;
  Json out;
  out["error"] = std::move(body);
  return out;
}

std::string render_text(const Json& doc) {
  std::ostringstream out;
  render_node(doc, 0, doc.is_object() ? "" : "value", out);
  return out.str();
}

const char* bundled_example() { return kBundledExample; }

}  // namespace api
}  // namespace icc
