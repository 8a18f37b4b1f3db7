#include "qst/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qst::diag {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
}

Rational Rational::operator+(const Rational& o) const {
  long long g = std::gcd(den, o.den);
  return Rational(num * (o.den / g) + o.num * (den / g), (den / g) * o.den);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  long long g1 = std::gcd(num < 0 ? -num : num, o.den);
  long long g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
  return Rational((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
}

Rational Rational::operator-() const {
  Rational r;
  r.num = -num;
  r.den = den;
  return r;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  // denominators are positive after normalization
  return num * o.den <=> o.num * den;
}

std::string Rational::str() const {
  std::string s = std::to_string(num);
  if (den != 1) s += "/" + std::to_string(den);
  return s;
}

Coeff Coeff::times_i(int power) const {
  Coeff c = *this;
  int p = ((power % 4) + 4) % 4;
  for (int i = 0; i < p; ++i) c = Coeff{-c.im, c.re};
  return c;
}

std::string VarId::str() const {
  switch (kind) {
    case VarKind::External:
      return "y" + std::to_string(vertex);
    case VarKind::Stamp:
      return "x" + std::to_string(vertex);
    case VarKind::Slot:
      return "x" + std::to_string(vertex) + "." + std::to_string(slot);
  }
  return "?";
}

TermSum make_field_monomial(const std::vector<VarId>& points) {
  DiagramTerm t;
  t.fields = points;
  return TermSum{{t}};
}

TermSum make_vertex_monomial(int stamp, int n, bool with_couplings) {
  DiagramTerm t;
  t.kernels.push_back({static_cast<std::int16_t>(stamp), static_cast<std::int16_t>(n)});
  t.cutoffs.push_back(static_cast<std::int16_t>(stamp));
  for (int s = 1; s <= n; ++s) t.fields.push_back(VarId::slot_of(stamp, s));
  if (with_couplings) {
    t.kappa_power = 1;
    t.hbar_power = -1;
    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    t.coeff = Coeff::real(Rational(-1, fact));
  }
  return TermSum{{t}};
}

TermSum add(TermSum a, const TermSum& b) {
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  return a;
}

TermSum scale(TermSum a, const Coeff& c) {
  for (auto& t : a.terms) t.coeff = t.coeff * c;
  return a;
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

using Key = std::vector<std::int32_t>;

std::int32_t pack(const VarId& v) {
  return static_cast<std::int32_t>(v.kind) * (1 << 20) + v.vertex * (1 << 10) + v.slot;
}

Key serialize_shape(const DiagramTerm& t) {
  Key k;
  k.push_back(t.kappa_power);
  k.push_back(t.hbar_power);
  k.push_back(static_cast<std::int32_t>(t.thetas.size()));
  for (auto& th : t.thetas) {
    k.push_back(pack(th.first));
    k.push_back(pack(th.second));
  }
  k.push_back(static_cast<std::int32_t>(t.kernels.size()));
  for (auto& kf : t.kernels) {
    k.push_back(kf.vertex);
    k.push_back(kf.n);
  }
  k.push_back(static_cast<std::int32_t>(t.props.size()));
  for (auto& p : t.props) {
    k.push_back(p.pauli_jordan ? 1 : 0);
    k.push_back(pack(p.a));
    k.push_back(pack(p.b));
  }
  k.push_back(static_cast<std::int32_t>(t.fields.size()));
  for (auto& f : t.fields) k.push_back(pack(f));
  k.push_back(static_cast<std::int32_t>(t.cutoffs.size()));
  for (auto c : t.cutoffs) k.push_back(c);
  return k;
}

void sort_factors(DiagramTerm& t) {
  std::sort(t.thetas.begin(), t.thetas.end());
  std::sort(t.kernels.begin(), t.kernels.end());
  std::sort(t.props.begin(), t.props.end());
  std::sort(t.fields.begin(), t.fields.end());
  std::sort(t.cutoffs.begin(), t.cutoffs.end());
}

// The kernel factor of a vertex is not symmetric under permuting its momentum
// arguments, so slot numbers are physical and must never be relabeled; the
// only gauge freedom is renaming the time-stamp integration variables.
DiagramTerm relabel(const DiagramTerm& t, const std::vector<int>& stamp_map,
                    const std::vector<std::int16_t>& stamps_old) {
  // stamp_map: position in stamps_old -> new stamp id (dense 1..k)
  auto map_stamp = [&](std::int16_t v) -> std::int16_t {
    for (size_t i = 0; i < stamps_old.size(); ++i)
      if (stamps_old[i] == v) return static_cast<std::int16_t>(stamp_map[i]);
    throw std::logic_error("unknown stamp in relabel");
  };

  auto map_id = [&](const VarId& v) -> VarId {
    if (v.kind == VarKind::External) return v;
    if (v.kind == VarKind::Stamp) return VarId::stamp(map_stamp(v.vertex));
    return VarId::slot_of(map_stamp(v.vertex), v.slot);
  };

  DiagramTerm out = t;
  for (auto& th : out.thetas) {
    th.first = map_id(th.first);
    th.second = map_id(th.second);
  }
  for (auto& kf : out.kernels) kf.vertex = map_stamp(kf.vertex);
  for (auto& p : out.props) {
    p.a = map_id(p.a);
    p.b = map_id(p.b);
  }
  for (auto& f : out.fields) f = map_id(f);
  for (auto& c : out.cutoffs) c = map_stamp(c);
  sort_factors(out);
  return out;
}

std::pair<Key, DiagramTerm> canonical_term(const DiagramTerm& t) {
  std::vector<std::int16_t> stamps;
  for (auto c : t.cutoffs) stamps.push_back(c);
  std::sort(stamps.begin(), stamps.end());
  if (std::adjacent_find(stamps.begin(), stamps.end()) != stamps.end())
    throw std::logic_error("repeated time stamp in one term");

  if (stamps.empty()) {
    DiagramTerm s = t;
    sort_factors(s);
    return {serialize_shape(s), s};
  }

  std::vector<int> perm(stamps.size());
  std::iota(perm.begin(), perm.end(), 1);
  bool have = false;
  Key best_key;
  DiagramTerm best_term;
  do {
    DiagramTerm cand = relabel(t, perm, stamps);
    Key key = serialize_shape(cand);
    if (!have || key < best_key) {
      have = true;
      best_key = std::move(key);
      best_term = std::move(cand);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best_key, best_term};
}

}  // namespace

TermSum canonicalize(const TermSum& s) {
  std::map<Key, DiagramTerm> acc;
  for (const auto& t : s.terms) {
    if (t.coeff.is_zero()) continue;
    auto [key, canon] = canonical_term(t);
    auto it = acc.find(key);
    if (it == acc.end()) {
      acc.emplace(std::move(key), std::move(canon));
    } else {
      it->second.coeff = it->second.coeff + canon.coeff;
    }
  }
  TermSum out;
  for (auto& [key, term] : acc) {
    if (!term.coeff.is_zero()) out.terms.push_back(std::move(term));
  }
  return out;
}

std::pair<TermSum, int> normalize_global_phase(const TermSum& s) {
  TermSum c = canonicalize(s);
  if (c.terms.empty()) return {c, 0};
  const Coeff& lead = c.terms.front().coeff;
  int ipow;
  if (lead.im.is_zero())
    ipow = lead.re.num > 0 ? 0 : 2;
  else if (lead.re.is_zero())
    ipow = lead.im.num > 0 ? 1 : 3;
  else
    throw std::runtime_error("leading coefficient is not phase-pure");
  // divide by i^ipow == multiply by i^(4-ipow)
  for (auto& t : c.terms) t.coeff = t.coeff.times_i((4 - ipow) % 4);
  return {c, ipow};
}

bool identical(const TermSum& a, const TermSum& b) {
  TermSum ca = canonicalize(a), cb = canonicalize(b);
  if (ca.terms.size() != cb.terms.size()) return false;
  for (size_t i = 0; i < ca.terms.size(); ++i) {
    if (serialize_shape(ca.terms[i]) != serialize_shape(cb.terms[i])) return false;
    if (!(ca.terms[i].coeff == cb.terms[i].coeff)) return false;
  }
  return true;
}

}  // namespace qst::diag
