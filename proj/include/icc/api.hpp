// Document-level operations shared by the CLI and the python module.
// Every function takes and returns JSON documents; errors surface as
// icc::Error and can be rendered with error_to_json.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "icc/encode.hpp"
#include "icc/error.hpp"
#include "icc/graph.hpp"
#include "icc/oracle.hpp"
#include "json.hpp"

namespace icc {
namespace api {

using Json = nlohmann::ordered_json;

// Parses graph text in the line format (n: / inner: / edge: lines).
Json graph_document(const std::string& text);

// Structure validation report; "is_ic_structure" tells pass or fail.
Json validate_document(const Json& graph_doc);

// Outer cycles, interlinked groups, and the two decodability conditions.
// Requires a valid structure.
Json analyze_document(const Json& graph_doc);

// Codebook for construction 1 or 2. selections maps a group's central
// vertex (as string key) to the chosen pre-central vertices.
Json encode_document(const Json& graph_doc, int construction,
                     const Json& selections);

// Per-inner-vertex decoding equations, plus recovered messages when a
// full message document is supplied (it acts as the side-information
// oracle). Pass a null messages_doc to skip recovery.
Json decode_document(const Json& graph_doc, const Json& codebook_doc,
                     const Json& transmissions_doc, const Json& messages_doc);

// Rank certification for every user plus optional random roundtrips.
Json verify_document(const Json& graph_doc, int trials, std::uint64_t seed,
                     int msg_len);

// Deterministic structure corpus. Returns {"graphs": [...], "summary": ...}
// where each graph entry carries both the JSON form and the line format.
Json enumerate_document(const EnumerateOptions& opts);

// Full pipeline on the bundled 17-vertex example.
Json demo_document();

// {"error": {"kind", "message", "detail"}}
Json error_to_json(const Error& e);

// Human-readable rendering of any document; JSON stays the contract.
std::string render_text(const Json& doc);

// Line-format text of the bundled 17-vertex example.
const char* bundled_example();

}  // namespace api
}  // namespace icc
