// Python module: JSON-string wrappers over the document layer, plus the
// message helpers needed to drive a full pipeline from python.
#include <pybind11/pybind11.h>

#include <cstdint>
#include <string>

#include "icc/api.hpp"
#include "icc/encode.hpp"
#include "icc/error.hpp"
#include "icc/graph.hpp"

namespace py = pybind11;

namespace {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw icc::Error(icc::ErrorKind::BadDocument, e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2); }

}  // namespace

PYBIND11_MODULE(icc, m) {
  m.doc() = "side-information graph structures, index codes, decodability checks";

  static py::exception<icc::Error> exc(m, "IccError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const icc::Error& e) {
      py::set_error(exc, icc::api::error_to_json(e).dump().c_str());
    }
  });

  m.def(
      "parse_graph",
      [](const std::string& text) { return dump(icc::api::graph_document(text)); },
      py::arg("text"), "line format -> graph JSON");

  m.def(
      "validate",
      [](const std::string& graph) { return dump(icc::api::validate_document(parse(graph))); },
      py::arg("graph"), "graph JSON -> validation report JSON");

  m.def(
      "analyze",
      [](const std::string& graph) { return dump(icc::api::analyze_document(parse(graph))); },
      py::arg("graph"), "graph JSON -> cycles, groups, conditions JSON");

  m.def(
      "encode",
      [](const std::string& graph, int construction, const std::string& selections) {
        Json sel = selections.empty() ? Json() : parse(selections);
        return dump(icc::api::encode_document(parse(graph), construction, sel));
      },
      py::arg("graph"), py::arg("construction") = 2, py::arg("selections") = "",
      "graph JSON -> codebook JSON");

  m.def(
      "decode",
      [](const std::string& graph, const std::string& codebook, const std::string& transmissions,
         const std::string& messages) {
        Json msg = messages.empty() ? Json() : parse(messages);
        return dump(
            icc::api::decode_document(parse(graph), parse(codebook), parse(transmissions), msg));
      },
      py::arg("graph"), py::arg("codebook"), py::arg("transmissions"), py::arg("messages") = "",
      "equations plus recovered messages when a message JSON is given");

  m.def(
      "verify",
      [](const std::string& graph, int trials, std::uint64_t seed, int msg_len) {
        return dump(icc::api::verify_document(parse(graph), trials, seed, msg_len));
      },
      py::arg("graph"), py::arg("trials") = 100, py::arg("seed") = 0, py::arg("msg_len") = 1,
      "rank certificates plus round-trip report JSON");

  m.def(
      "enumerate_structures",
      [](int max_n, std::uint64_t seed, std::size_t budget, int k_min, int k_max) {
        icc::EnumerateOptions opts;
        opts.max_n = max_n;
        opts.seed = seed;
        opts.budget = budget;
        opts.k_min = k_min;
        opts.k_max = k_max;
        return dump(icc::api::enumerate_document(opts));
      },
      py::arg("max_n") = 8, py::arg("seed") = 0, py::arg("budget") = 100000,
      py::arg("k_min") = 2, py::arg("k_max") = 8, "deterministic structure corpus JSON");

  m.def("demo", []() { return dump(icc::api::demo_document()); },
        "full pipeline on the bundled example");

  m.def("bundled_example", []() { return std::string(icc::api::bundled_example()); },
        "line-format text of the bundled example");

  m.def(
      "random_messages",
      [](int n, std::size_t len, std::uint64_t seed) {
        return dump(icc::messages_to_json(icc::random_messages(n, len, seed)));
      },
      py::arg("n"), py::arg("len") = 1, py::arg("seed") = 0, "seeded message JSON");

  m.def(
      "transmit",
      [](const std::string& codebook, const std::string& messages) {
        icc::Codebook book = icc::codebook_from_json(parse(codebook));
        Json mdoc = parse(messages);
        int n = 0;
        if (mdoc.is_object() && mdoc.contains("messages") && mdoc["messages"].is_array())
          n = static_cast<int>(mdoc["messages"].size());
        icc::MessageVector msgs = icc::messages_from_json(mdoc, n);
        return dump(icc::transmissions_to_json(icc::transmit(book, msgs)));
      },
      py::arg("codebook"), py::arg("messages"), "XOR each symbol support, keyed by label");
}
