#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qst/diagram.hpp"
#include "qst/kernel.hpp"

namespace qst::diag {

namespace {

Rational factorial_inv(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(1, f);
}

const Coeff kI{{0, 1}, {1, 1}};

TermSum observable() { return make_field_monomial({VarId::external(0)}); }

TermSum general_alternating(int k, int n) {
  // i^k sum over subsets I of {1..k}: (-1)^|I| tbar(S_I + F) * t(S_Ic)
  std::vector<Stamped> all;
  for (int j = 1; j <= k; ++j) all.push_back({VarId::stamp(j), make_vertex_monomial(j, n)});
  Stamped obs{VarId::external(0), observable()};

  TermSum acc;
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<Stamped> left, right;
    for (int j = 0; j < k; ++j)
      (mask & (1 << j) ? left : right).push_back(all[j]);
    left.push_back(obs);
    TermSum piece = star_wick(tbar_product(left), t_product(right));
    int bits = 0;
    for (int j = 0; j < k; ++j)
      if (mask & (1 << j)) ++bits;
    if (bits % 2) piece = scale(std::move(piece), -Coeff::one());
    acc = add(std::move(acc), piece);
  }
  return scale(std::move(acc), Coeff::one().times_i(k));
}

}  // namespace

RResult r_product(int k, const EffectiveInteraction& vertex, RRoute route) {
  if (k < 0) throw std::domain_error("negative expansion order");
  if (k > 3) throw std::domain_error("expansion order above 3 not supported");
  int n = vertex.n;
  if (n < 1) throw std::invalid_argument("vertex needs at least one field factor");
  if (k >= 1 && (n < 2 || n > 4))
    throw std::domain_error("vertex arity outside the supported range 2..4");

  if (k == 0) return {canonicalize(observable()), true};

  TermSum sum;
  bool checked = true;
  if (route == RRoute::ClosedDisplay && k == 1) {
    Stamped v1{VarId::stamp(1), make_vertex_monomial(1, n)};
    Stamped obs{VarId::external(0), observable()};
    TermSum t2 = t_product({v1, obs});
    TermSum vf = star_wick(v1.sum, obs.sum);
    sum = scale(add(std::move(t2), scale(std::move(vf), -Coeff::one())), kI);
  } else if (route == RRoute::ClosedDisplay && k == 2) {
    Stamped v1{VarId::stamp(1), make_vertex_monomial(1, n)};
    Stamped v2{VarId::stamp(2), make_vertex_monomial(2, n)};
    Stamped obs{VarId::external(0), observable()};
    TermSum t3 = t_product({v1, v2, obs});
    TermSum a = star_wick(v1.sum, t_product({v2, obs}));
    TermSum b = star_wick(v2.sum, t_product({v1, obs}));
    TermSum c = star_wick(t_product({v1, v2}), obs.sum);
    TermSum d = star_wick(star_wick(v1.sum, v2.sum), obs.sum);
    TermSum e = star_wick(star_wick(v2.sum, v1.sum), obs.sum);
    sum = add(std::move(t3), scale(std::move(a), -Coeff::one()));
    sum = add(std::move(sum), scale(std::move(b), -Coeff::one()));
    sum = add(std::move(sum), scale(std::move(c), -Coeff::one()));
    sum = add(std::move(sum), std::move(d));
    sum = add(std::move(sum), std::move(e));
  } else {
    sum = general_alternating(k, n);
    checked = k <= 2;
  }
  sum = scale(std::move(sum), Coeff::real(factorial_inv(k)));
  return {canonicalize(sum), checked};
}

// ---------------------------------------------------------------------------
// diagram-rule generator

namespace {

struct GenState {
  int k = 0;
  int n = 0;
  std::vector<int> pi;                        // pi[pos] = stamp id, pos 0 latest
  std::vector<std::vector<bool>> used;        // [stamp id][slot] occupancy
  std::vector<std::array<int, 2>> pairs;      // position pairs (later pos, earlier pos)
  struct Edge {
    int later_v, earlier_v;
    std::vector<std::pair<int, int>> lines;  // (later slot, earlier slot)
  };
  std::vector<Edge> edges;
  int ext_slot = 0;
  TermSum* out = nullptr;
};

void emit_atoms(GenState& st) {
  // connectivity: every position >= 1 needs a line to some strictly later vertex
  for (int q = 1; q < st.k; ++q) {
    bool hit = false;
    for (size_t e = 0; e < st.pairs.size(); ++e)
      if (st.pairs[e][1] == q && !st.edges[e].lines.empty()) hit = true;
    if (!hit) return;
  }

  std::vector<const GenState::Edge*> live;
  for (const auto& e : st.edges)
    if (!e.lines.empty()) live.push_back(&e);

  int lines = 1;
  for (auto* e : live) lines += static_cast<int>(e->lines.size());

  DiagramTerm base;
  base.kappa_power = st.k;
  base.hbar_power = lines - st.k;
  long long nf = 1;
  for (int i = 2; i <= st.n; ++i) nf *= i;
  long long kf = 1;
  for (int i = 2; i <= st.k; ++i) kf *= i;
  long long den = kf;
  for (int j = 0; j < st.k; ++j) den *= nf;
  base.coeff = Coeff::real(Rational(1, den));
  base.thetas.emplace_back(VarId::external(0), VarId::stamp(st.pi[0]));
  for (auto* e : live) base.thetas.emplace_back(VarId::stamp(e->later_v), VarId::stamp(e->earlier_v));
  for (int j = 1; j <= st.k; ++j) {
    base.kernels.push_back({static_cast<std::int16_t>(j), static_cast<std::int16_t>(st.n)});
    base.cutoffs.push_back(static_cast<std::int16_t>(j));
  }
  base.props.push_back({true, VarId::external(0), VarId::slot_of(st.pi[0], st.ext_slot)});
  for (int j = 1; j <= st.k; ++j)
    for (int s = 1; s <= st.n; ++s)
      if (!st.used[j][s]) base.fields.push_back(VarId::slot_of(j, s));

  int m = static_cast<int>(live.size());
  for (int mask = 0; mask < (1 << m); ++mask) {
    DiagramTerm t = base;
    int rev = 0;
    for (int e = 0; e < m; ++e) {
      bool reversed = mask & (1 << e);
      if (reversed) ++rev;
      for (auto& [ls, es] : live[e]->lines) {
        VarId a = VarId::slot_of(live[e]->later_v, ls);
        VarId b = VarId::slot_of(live[e]->earlier_v, es);
        if (reversed) std::swap(a, b);
        t.props.push_back({false, a, b});
      }
    }
    if (rev % 2) t.coeff = -t.coeff;
    st.out->terms.push_back(std::move(t));
  }
}

void assign_pairs(GenState& st, size_t pidx);

void choose_lines(GenState& st, size_t pidx, int t) {
  int lv = st.pi[st.pairs[pidx][0]];
  int ev = st.pi[st.pairs[pidx][1]];
  std::vector<int> freeL, freeE;
  for (int s = 1; s <= st.n; ++s) {
    if (!st.used[lv][s]) freeL.push_back(s);
    if (!st.used[ev][s]) freeE.push_back(s);
  }
  if (t > static_cast<int>(std::min(freeL.size(), freeE.size()))) return;
  if (t == 0) {
    st.edges.push_back({lv, ev, {}});
    assign_pairs(st, pidx + 1);
    st.edges.pop_back();
    return;
  }

  std::vector<int> selL(t), selE(t);
  std::function<void(int, int)> pickL = [&](int start, int got) {
    if (got == t) {
      std::function<void(int, int)> pickE = [&](int startE, int gotE) {
        if (gotE == t) {
          std::vector<int> perm(t);
          std::iota(perm.begin(), perm.end(), 0);
          do {
            GenState::Edge edge{lv, ev, {}};
            for (int i = 0; i < t; ++i) edge.lines.emplace_back(selL[i], selE[perm[i]]);
            for (int i = 0; i < t; ++i) {
              st.used[lv][selL[i]] = true;
              st.used[ev][selE[i]] = true;
            }
            st.edges.push_back(edge);
            assign_pairs(st, pidx + 1);
            st.edges.pop_back();
            for (int i = 0; i < t; ++i) {
              st.used[lv][selL[i]] = false;
              st.used[ev][selE[i]] = false;
            }
          } while (std::next_permutation(perm.begin(), perm.end()));
          return;
        }
        for (int j = startE; j < static_cast<int>(freeE.size()); ++j) {
          selE[gotE] = freeE[j];
          pickE(j + 1, gotE + 1);
        }
      };
      pickE(0, 0);
      return;
    }
    for (int j = start; j < static_cast<int>(freeL.size()); ++j) {
      selL[got] = freeL[j];
      pickL(j + 1, got + 1);
    }
  };
  pickL(0, 0);
}

void assign_pairs(GenState& st, size_t pidx) {
  if (pidx == st.pairs.size()) {
    emit_atoms(st);
    return;
  }
  for (int t = 0; t <= st.n; ++t) choose_lines(st, pidx, t);
}

}  // namespace

TermSum feynman_terms(int k, int n) {
  if (k < 0) throw std::domain_error("negative expansion order");
  if (k > 3) throw std::domain_error("expansion order above 3 not supported");
  if (k == 0) return canonicalize(observable());
  if (n < 2 || n > 4) throw std::domain_error("vertex arity outside the supported range 2..4");

  TermSum out;
  GenState st;
  st.k = k;
  st.n = n;
  st.out = &out;
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q) st.pairs.push_back({p, q});

  std::vector<int> pi(k);
  std::iota(pi.begin(), pi.end(), 1);
  do {
    st.pi = pi;
    for (int s = 1; s <= n; ++s) {
      st.used.assign(k + 1, std::vector<bool>(n + 1, false));
      st.used[pi[0]][s] = true;
      st.ext_slot = s;
      assign_pairs(st, 0);
    }
  } while (std::next_permutation(pi.begin(), pi.end()));

  return canonicalize(out);
}

std::vector<Topology> feynman_topologies(int k, int n) {
  if (k < 0) throw std::domain_error("negative expansion order");
  if (k > 3) throw std::domain_error("expansion order above 3 not supported");
  if (k == 0) return {};
  if (n < 2 || n > 4) throw std::domain_error("vertex arity outside the supported range 2..4");

  std::vector<std::array<int, 2>> pairs;
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q) pairs.push_back({p, q});

  std::vector<Topology> out;
  std::vector<int> t(pairs.size(), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == pairs.size()) {
      std::vector<int> occ(k, 0);
      occ[0] = 1;  // external line
      for (size_t e = 0; e < pairs.size(); ++e) {
        occ[pairs[e][0]] += t[e];
        occ[pairs[e][1]] += t[e];
      }
      for (int p = 0; p < k; ++p)
        if (occ[p] > n) return;
      for (int q = 1; q < k; ++q) {
        int up = 0;
        for (size_t e = 0; e < pairs.size(); ++e)
          if (pairs[e][1] == q) up += t[e];
        if (up == 0) return;
      }
      Topology topo;
      topo.k = k;
      topo.n = n;
      topo.lines = 1;
      Rational pref = factorial_inv(k);
      for (int j = 0; j < k; ++j) pref = pref * factorial_inv(n);
      for (size_t e = 0; e < pairs.size(); ++e) {
        if (t[e] == 0) continue;
        topo.edges.push_back({pairs[e][0], pairs[e][1], t[e]});
        topo.lines += t[e];
        pref = pref * factorial_inv(t[e]);
      }
      topo.display_prefactor = pref;
      topo.hbar_net = topo.lines - k;
      out.push_back(std::move(topo));
      return;
    }
    for (int v = 0; v <= n; ++v) {
      t[i] = v;
      rec(i + 1);
    }
    t[i] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

ExpandSummary summarize(const TermSum& s, int k, int n) {
  ExpandSummary es;
  es.term_count = static_cast<int>(s.terms.size());
  es.topology_count = k >= 1 ? static_cast<int>(feynman_topologies(k, n).size()) : 1;
  for (const auto& t : s.terms) ++es.hbar_histogram[t.hbar_power];
  return es;
}

// ---------------------------------------------------------------------------
// numeric side of the vertex

std::complex<double> EffectiveInteraction::integrand(
    const std::function<std::complex<double>(const Four&)>& ghat, const MomentumConfig& cfg,
    double lambda_p) const {
  if (n < 1) throw std::invalid_argument("vertex needs at least one field factor");
  if (static_cast<int>(cfg.size()) != n)
    throw std::invalid_argument("momentum configuration size does not match vertex arity");
  if (!derivs.empty() && static_cast<int>(derivs.size()) != n)
    throw std::invalid_argument("derivative multi-index count does not match vertex arity");
  if (lambda_p < 0) throw std::invalid_argument("negative length scale");

  Four ksum{0, 0, 0, 0};
  for (const auto& kv : cfg) ksum = add4(ksum, kv);
  std::complex<double> val = ghat(scale4(-1.0, ksum));

  if (!derivs.empty()) {
    const std::complex<double> I{0.0, 1.0};
    for (int j = 0; j < n; ++j)
      for (int mu = 0; mu < 4; ++mu)
        for (int a = 0; a < derivs[j][mu]; ++a) val *= I * cfg[j][mu];
  }

  if (n >= 2 && lambda_p > 0) val *= kernel::lambda_closed(cfg, lambda_p);
  return val;
}

std::string EffectiveInteraction::position_space_form() const {
  std::string fields;
  for (int j = 0; j < n; ++j) {
    if (j) fields += ", ";
    std::string f = "phi";
    if (!derivs.empty()) {
      std::string d;
      for (int mu = 0; mu < 4; ++mu)
        for (int a = 0; a < derivs[static_cast<size_t>(j)][mu]; ++a)
          d += "d" + std::to_string(mu) + " ";
      f = d + f;
    }
    fields += f;
  }
  if (n == 1) return "-(kappa/hbar) int dx g(x) " + fields + "(x)";
  return "-(kappa/(hbar " + std::to_string(n) + "!)) int dx g(x) Gamma_" + std::to_string(n) +
         "[" + fields + "](x)";
}

}  // namespace qst::diag
