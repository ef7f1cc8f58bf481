// Command-line front end: validate / analyze / encode / decode / verify /
// enumerate / demo over the document layer, JSON out, stable exit codes.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "icc/api.hpp"
#include "icc/error.hpp"

namespace {

using icc::Error;
using icc::ErrorKind;
using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Usage, "cannot read file: " + path, Json{{"path", path}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::BadDocument, "invalid JSON in " + path, Json{{"what", e.what()}});
  }
}

// Graph files may be either the line format or its JSON form.
Json read_graph_doc(const std::string& path) {
  std::string text = read_file(path);
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text[i] == '{') return parse_json_text(text, path);
  return icc::api::graph_document(text);
}

void emit(const Json& doc, bool text_mode) {
  if (text_mode)
    std::cout << icc::api::render_text(doc);
  else
    std::cout << doc.dump(2) << "\n";
}

Json selections_from_flags(const std::vector<std::string>& selects) {
  Json selections = Json::object();
  for (const std::string& s : selects) {
    std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
      throw Error(ErrorKind::Usage, "--select expects ccv=v[,v]: " + s, Json{{"select", s}});
    Json picks = Json::array();
    std::stringstream rhs(s.substr(eq + 1));
    std::string item;
    while (std::getline(rhs, item, ',')) {
      std::size_t pos = 0;
      int v = 0;
      try {
        v = std::stoi(item, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != item.size() || v < 1)
        throw Error(ErrorKind::Usage, "--select has a bad vertex id: " + s, Json{{"select", s}});
      picks.push_back(v);
    }
    if (picks.empty())
      throw Error(ErrorKind::Usage, "--select lists no vertices: " + s, Json{{"select", s}});
    selections[s.substr(0, eq)] = std::move(picks);
  }
  return selections;
}

int run_enumerate(const icc::EnumerateOptions& opts, const std::string& out_dir, bool text_mode) {
  Json doc = icc::api::enumerate_document(opts);
  std::filesystem::create_directories(out_dir);
  std::map<std::pair<int, int>, int> index;
  int written = 0;
  for (const auto& entry : doc["graphs"]) {
    int n = entry["n"].get<int>();
    int k = entry["k"].get<int>();
    int idx = index[{n, k}]++;
    char name[64];
    std::snprintf(name, sizeof(name), "ic_n%d_k%d_%04d.sig", n, k, idx);
    std::ofstream out(std::filesystem::path(out_dir) / name, std::ios::binary);
    if (!out)
      throw Error(ErrorKind::Usage, std::string("cannot write file: ") + name,
                  Json{{"out", out_dir}});
    out << entry["text"].get<std::string>();
    ++written;
  }
  Json summary;
  summary["out_dir"] = out_dir;
  summary["files_written"] = written;
  summary["count"] = doc["summary"]["count"];
  summary["with_outer_cycles"] = doc["summary"]["with_outer_cycles"];
  summary["by_size"] = doc["summary"]["by_size"];
  emit(summary, text_mode);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"side-information graph structures, index codes, decodability checks"};
  app.require_subcommand(1);
  std::string format = "json";

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output rendering")->check(CLI::IsMember({"json", "text"}));
  };

  std::string graph_path;
  auto* cmd_validate = app.add_subcommand("validate", "check the structural conditions");
  cmd_validate->add_option("graph", graph_path, "graph file")->required();
  add_format(cmd_validate);

  auto* cmd_analyze = app.add_subcommand("analyze", "outer cycles, groups, conditions");
  cmd_analyze->add_option("graph", graph_path, "graph file")->required();
  add_format(cmd_analyze);

  int construction = 2;
  std::vector<std::string> selects;
  auto* cmd_encode = app.add_subcommand("encode", "build the codebook");
  cmd_encode->add_option("graph", graph_path, "graph file")->required();
  cmd_encode->add_option("--construction", construction, "construction 1 or 2");
  cmd_encode->add_option("--select", selects, "pre-central override, ccv=v[,v]");
  add_format(cmd_encode);

  std::string codebook_path;
  std::string transmissions_path;
  std::string messages_path;
  auto* cmd_decode = app.add_subcommand("decode", "derive decoding equations, recover messages");
  cmd_decode->add_option("graph", graph_path, "graph file")->required();
  cmd_decode->add_option("codebook", codebook_path, "codebook JSON")->required();
  cmd_decode->add_option("transmissions", transmissions_path, "transmissions JSON")->required();
  cmd_decode->add_option("--messages", messages_path, "full message JSON as side information");
  add_format(cmd_decode);

  int trials = 100;
  std::uint64_t seed = 0;
  int msg_len = 1;
  auto* cmd_verify = app.add_subcommand("verify", "rank certificates and random round trips");
  cmd_verify->add_option("graph", graph_path, "graph file")->required();
  cmd_verify->add_option("--trials", trials, "round-trip trials");
  cmd_verify->add_option("--seed", seed, "round-trip seed");
  cmd_verify->add_option("--msg-len", msg_len, "message length in bytes");
  add_format(cmd_verify);

  icc::EnumerateOptions opts;
  std::string out_dir;
  auto* cmd_enumerate = app.add_subcommand("enumerate", "write a structure corpus");
  cmd_enumerate->add_option("--max-n", opts.max_n, "largest vertex count")->required();
  cmd_enumerate->add_option("--out", out_dir, "output directory")->required();
  cmd_enumerate->add_option("--seed", opts.seed, "sampling seed");
  cmd_enumerate->add_option("--budget", opts.budget, "sampling attempts for n >= 6");
  cmd_enumerate->add_option("--k-min", opts.k_min, "smallest inner-set size");
  cmd_enumerate->add_option("--k-max", opts.k_max, "largest inner-set size");
  add_format(cmd_enumerate);

  auto* cmd_demo = app.add_subcommand("demo", "full pipeline on the bundled example");
  add_format(cmd_demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  bool text_mode = format == "text";
  try {
    if (*cmd_validate) {
      Json doc = icc::api::validate_document(read_graph_doc(graph_path));
      emit(doc, text_mode);
      return doc["is_ic_structure"].get<bool>() ? 0 : 1;
    }
    if (*cmd_analyze) {
      emit(icc::api::analyze_document(read_graph_doc(graph_path)), text_mode);
      return 0;
    }
    if (*cmd_encode) {
      emit(icc::api::encode_document(read_graph_doc(graph_path), construction,
                                     selections_from_flags(selects)),
           text_mode);
      return 0;
    }
    if (*cmd_decode) {
      Json messages_doc;
      if (!messages_path.empty())
        messages_doc = parse_json_text(read_file(messages_path), messages_path);
      emit(icc::api::decode_document(
               read_graph_doc(graph_path),
               parse_json_text(read_file(codebook_path), codebook_path),
               parse_json_text(read_file(transmissions_path), transmissions_path), messages_doc),
           text_mode);
      return 0;
    }
    if (*cmd_verify) {
      Json doc = icc::api::verify_document(read_graph_doc(graph_path), trials, seed, msg_len);
      emit(doc, text_mode);
      return doc["certificate"]["all_decodable"].get<bool>() ? 0 : 1;
    }
    if (*cmd_enumerate) return run_enumerate(opts, out_dir, text_mode);
    if (*cmd_demo) {
      emit(icc::api::demo_document(), text_mode);
      return 0;
    }
  } catch (const Error& e) {
    emit(icc::api::error_to_json(e), text_mode);
    std::cerr << "error: " << e.what() << "\n";
    return e.kind == ErrorKind::Usage ? 2 : 1;
  }
  return 2;
}
