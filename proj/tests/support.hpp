#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "psr/parser.hpp"

namespace psr::test {

inline std::string read_instance(const std::string& name) {
  std::ifstream in(std::string(PSR_INSTANCE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing instance " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Presentation load(const std::string& name) { return parse_presentation(read_instance(name)); }

inline const char* const kInstances[] = {"inst_a.psr", "inst_c.psr", "inst_d.psr", "inst_d_loc.psr", "nat.psr"};

}  // namespace psr::test
