#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qst/diagram.hpp"

namespace qst::diag {

namespace {

// split a coefficient into signed rational magnitude and i_power in {0,1}
std::pair<Rational, int> split_phase(const Coeff& c) {
  if (c.im.is_zero()) return {c.re, 0};
  if (c.re.is_zero()) return {c.im, 1};
  throw std::runtime_error("term coefficient is not phase-pure");
}

nlohmann::json term_json(const DiagramTerm& t) {
  auto [sym, ipow] = split_phase(t.coeff);
  nlohmann::json j;
  j["kappa_power"] = t.kappa_power;
  j["hbar_power"] = t.hbar_power;
  j["hbar_lines"] = t.hbar_lines();
  j["sym_factor"] = {sym.num, sym.den};
  j["i_power"] = ipow;
  nlohmann::json th = nlohmann::json::array();
  for (const auto& p : t.thetas) th.push_back({p.first.str(), p.second.str()});
  j["thetas"] = th;
  nlohmann::json ks = nlohmann::json::array();
  for (const auto& k : t.kernels) {
    nlohmann::json slots = nlohmann::json::array();
    for (int s = 1; s <= k.n; ++s) slots.push_back(VarId::slot_of(k.vertex, s).str());
    ks.push_back({{"vertex", VarId::stamp(k.vertex).str()}, {"arity", k.n}, {"slots", slots}});
  }
  j["kernels"] = ks;
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : t.props)
    ps.push_back({{"type", p.pauli_jordan ? "pauli_jordan" : "wightman_plus"},
                  {"a", p.a.str()},
                  {"b", p.b.str()}});
  j["props"] = ps;
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : t.fields) fs.push_back(f.str());
  j["fields"] = fs;
  nlohmann::json cs = nlohmann::json::array();
  for (auto c : t.cutoffs) cs.push_back(VarId::stamp(c).str());
  j["cutoffs"] = cs;
  j["integrations"] = cs;
  return j;
}

}  // namespace

std::string to_canonical_json(const TermSum& s) {
  nlohmann::json j;
  j["schema"] = 1;
  j["kind"] = "term_sum";
  j["term_count"] = s.terms.size();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : s.terms) terms.push_back(term_json(t));
  j["terms"] = terms;
  return j.dump(2);
}

std::string to_text(const TermSum& s) {
  std::string out;
  for (const auto& t : s.terms) {
    auto [sym, ipow] = split_phase(t.coeff);
    std::string line = sym.num < 0 ? "- " : "+ ";
    Rational mag = sym.num < 0 ? -sym : sym;
    line += mag.str();
    if (ipow) line += " i";
    if (t.kappa_power) line += " kappa^" + std::to_string(t.kappa_power);
    line += " hbar^" + std::to_string(t.hbar_power);
    for (const auto& th : t.thetas)
      line += " theta(" + th.first.str() + "-" + th.second.str() + ")";
    for (const auto& k : t.kernels)
      line += " Gamma" + std::to_string(k.n) + "(" + VarId::stamp(k.vertex).str() + ")";
    for (auto c : t.cutoffs) line += " g(" + VarId::stamp(c).str() + ")";
    for (const auto& p : t.props)
      line += std::string(" ") + (p.pauli_jordan ? "PJ" : "W") + "(" + p.a.str() + "," +
              p.b.str() + ")";
    for (const auto& f : t.fields) line += " phi(" + f.str() + ")";
    out += line + "\n";
  }
  if (s.terms.empty()) out = "0\n";
  return out;
}

}  // namespace qst::diag
