// Shared test helpers: fixture loading and small conversions.
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "icc/graph.hpp"

namespace icc::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline SideInfoGraph load_fixture(const std::string& name) {
  return parse_graph(read_file("fixtures/" + name));
}

}  // namespace icc::test
