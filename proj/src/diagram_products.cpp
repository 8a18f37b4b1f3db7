#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qst/diagram.hpp"

namespace qst::diag {

namespace {

// all c-element index subsets of [0, m)
void for_each_combination(int m, int c, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(c);
  std::iota(idx.begin(), idx.end(), 0);
  if (c == 0) {
    fn(idx);
    return;
  }
  if (c > m) return;
  while (true) {
    fn(idx);
    int i = c - 1;
    while (i >= 0 && idx[i] == m - c + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < c; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void check_disjoint(const DiagramTerm& a, const DiagramTerm& b) {
  std::set<VarId> pa(a.fields.begin(), a.fields.end());
  for (const auto& f : b.fields)
    if (pa.count(f))
      throw std::invalid_argument("coinciding field point across Wick product operands: " +
                                  f.str());
  std::set<std::int16_t> sa(a.cutoffs.begin(), a.cutoffs.end());
  for (auto c : b.cutoffs)
    if (sa.count(c))
      throw std::invalid_argument("repeated time stamp across Wick product operands");
}

void star_terms(const DiagramTerm& a, const DiagramTerm& b, TermSum& out) {
  check_disjoint(a, b);
  int p = static_cast<int>(a.fields.size());
  int q = static_cast<int>(b.fields.size());

  DiagramTerm base;
  base.kappa_power = a.kappa_power + b.kappa_power;
  base.hbar_power = a.hbar_power + b.hbar_power;
  base.coeff = a.coeff * b.coeff;
  base.thetas = a.thetas;
  base.thetas.insert(base.thetas.end(), b.thetas.begin(), b.thetas.end());
  base.kernels = a.kernels;
  base.kernels.insert(base.kernels.end(), b.kernels.begin(), b.kernels.end());
  base.props = a.props;
  base.props.insert(base.props.end(), b.props.begin(), b.props.end());
  base.cutoffs = a.cutoffs;
  base.cutoffs.insert(base.cutoffs.end(), b.cutoffs.begin(), b.cutoffs.end());

  for (int c = 0; c <= std::min(p, q); ++c) {
    for_each_combination(p, c, [&](const std::vector<int>& ia) {
      for_each_combination(q, c, [&](const std::vector<int>& ib) {
        std::vector<int> perm(c);
        std::iota(perm.begin(), perm.end(), 0);
        do {
          DiagramTerm t = base;
          t.hbar_power += c;
          std::vector<bool> useda(p, false), usedb(q, false);
          for (int i = 0; i < c; ++i) {
            useda[ia[i]] = true;
            usedb[ib[perm[i]]] = true;
            t.props.push_back({false, a.fields[ia[i]], b.fields[ib[perm[i]]]});
          }
          for (int i = 0; i < p; ++i)
            if (!useda[i]) t.fields.push_back(a.fields[i]);
          for (int i = 0; i < q; ++i)
            if (!usedb[i]) t.fields.push_back(b.fields[i]);
          out.terms.push_back(std::move(t));
        } while (std::next_permutation(perm.begin(), perm.end()));
      });
    });
  }
}

}  // namespace

TermSum star_wick(const TermSum& A, const TermSum& B) {
  TermSum out;
  for (const auto& a : A.terms)
    for (const auto& b : B.terms) star_terms(a, b, out);
  return out;
}

namespace {

TermSum ordered_product(const std::vector<Stamped>& ops, const std::vector<int>& order,
                        bool reversed) {
  // order lists operand indices by descending time; factor order follows it
  // directly (latest leftmost) or reversed (earliest leftmost)
  std::vector<int> fac = order;
  if (reversed) std::reverse(fac.begin(), fac.end());
  TermSum prod = ops[fac[0]].sum;
  for (size_t i = 1; i < fac.size(); ++i) prod = star_wick(prod, ops[fac[i]].sum);
  for (auto& t : prod.terms)
    for (size_t i = 0; i + 1 < order.size(); ++i)
      t.thetas.emplace_back(ops[order[i]].time_ref, ops[order[i + 1]].time_ref);
  return prod;
}

TermSum time_ordered(const std::vector<Stamped>& ops, bool reversed) {
  if (ops.empty()) {
    DiagramTerm unit;
    return TermSum{{unit}};
  }
  std::vector<int> order(ops.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end());
  TermSum out;
  do {
    out = add(std::move(out), ordered_product(ops, order, reversed));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace

TermSum t_product(const std::vector<Stamped>& ops) { return time_ordered(ops, false); }

TermSum tbar_product(const std::vector<Stamped>& ops) { return time_ordered(ops, true); }

TermSum expand_pauli_jordan(const TermSum& s) {
  TermSum out;
  for (const auto& t : s.terms) {
    std::vector<size_t> pj;
    for (size_t i = 0; i < t.props.size(); ++i)
      if (t.props[i].pauli_jordan) pj.push_back(i);
    if (pj.empty()) {
      out.terms.push_back(t);
      continue;
    }
    int m = static_cast<int>(pj.size());
    for (int mask = 0; mask < (1 << m); ++mask) {
      DiagramTerm b = t;
      int flips = 0;
      for (int i = 0; i < m; ++i) {
        PropFactor& p = b.props[pj[i]];
        p.pauli_jordan = false;
        if (mask & (1 << i)) {
          std::swap(p.a, p.b);
          ++flips;
        }
      }
      if (flips % 2) b.coeff = -b.coeff;
      out.terms.push_back(std::move(b));
    }
  }
  return out;
}

TermSum expand_theta_sectors(const TermSum& s) {
  TermSum out;
  for (const auto& t : s.terms) {
    std::set<VarId> refs;
    for (auto c : t.cutoffs) refs.insert(VarId::stamp(c));
    auto note = [&](const VarId& v) {
      if (v.kind == VarKind::External) refs.insert(v);
    };
    for (const auto& th : t.thetas) {
      note(th.first);
      note(th.second);
    }
    for (const auto& p : t.props) {
      note(p.a);
      note(p.b);
    }
    for (const auto& f : t.fields) note(f);

    std::vector<VarId> order(refs.begin(), refs.end());
    std::sort(order.begin(), order.end());
    do {
      // order[0] latest; consistent iff every theta(a-b) has a before b
      auto pos = [&](const VarId& v) {
        for (size_t i = 0; i < order.size(); ++i)
          if (order[i] == v) return static_cast<int>(i);
        throw std::logic_error("theta ref outside term time refs");
      };
      bool ok = true;
      for (const auto& th : t.thetas)
        if (pos(th.first) >= pos(th.second)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      DiagramTerm b = t;
      b.thetas.clear();
      for (size_t i = 0; i + 1 < order.size(); ++i) b.thetas.emplace_back(order[i], order[i + 1]);
      out.terms.push_back(std::move(b));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return out;
}

}  // namespace qst::diag
