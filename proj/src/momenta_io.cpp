#include "qst/momenta_io.hpp"

#include <fstream>
#include <sstream>

namespace qst::io {

std::vector<MomentumConfig> parse_momenta(std::istream& in) {
  std::vector<MomentumConfig> out;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::vector<double> vals;
    std::string tok;
    while (ss >> tok) {
      size_t pos = 0;
      double v;
      try {
        v = std::stod(tok, &pos);
      } catch (const std::exception&) {
        throw ParseError(lineno, "not a number: '" + tok + "'");
      }
      if (pos != tok.size()) throw ParseError(lineno, "not a number: '" + tok + "'");
      vals.push_back(v);
    }
    if (vals.empty()) continue;
    if (vals.size() % 4 != 0)
      throw ParseError(lineno, "expected a multiple of 4 components, got " +
                                   std::to_string(vals.size()));
    MomentumConfig cfg;
    for (size_t i = 0; i < vals.size(); i += 4)
      cfg.push_back({vals[i], vals[i + 1], vals[i + 2], vals[i + 3]});
    out.push_back(std::move(cfg));
  }
  return out;
}

std::vector<MomentumConfig> parse_momenta_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open momenta file: " + path);
  return parse_momenta(f);
}

}  // namespace qst::io
