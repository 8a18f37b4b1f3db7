#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qst/geometry.hpp"

namespace qst::io {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// One momentum configuration per non-comment line: 4n whitespace-separated
// reals, n >= 1. '#' starts a comment; blank lines are skipped.
std::vector<MomentumConfig> parse_momenta(std::istream& in);
std::vector<MomentumConfig> parse_momenta_file(const std::string& path);

}  // namespace qst::io
