#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qst/geometry.hpp"

namespace qst::diag {

// ---------------------------------------------------------------------------
// exact coefficients

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator-() const;
  std::strong_ordering operator<=>(const Rational& o) const;  // value order
  bool operator==(const Rational& o) const = default;
  bool is_zero() const { return num == 0; }
  std::string str() const;
};

// re + i*im with exact rational parts
struct Coeff {
  Rational re{0, 1};
  Rational im{0, 1};

  static Coeff one() { return {{1, 1}, {0, 1}}; }
  static Coeff real(const Rational& r) { return {r, {0, 1}}; }
  Coeff operator+(const Coeff& o) const { return {re + o.re, im + o.im}; }
  Coeff operator*(const Coeff& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Coeff operator-() const { return {-re, -im}; }
  bool operator==(const Coeff& o) const = default;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  Coeff times_i(int power) const;  // multiply by i^power
};

// ---------------------------------------------------------------------------
// term structure

enum class VarKind : std::uint8_t { External = 0, Stamp = 1, Slot = 2 };

struct VarId {
  VarKind kind = VarKind::External;
  std::int16_t vertex = 0;  // stamp number, or external index for External
  std::int16_t slot = 0;    // slot number within the vertex (Slot only)

  auto operator<=>(const VarId&) const = default;

  static VarId external(int i) { return {VarKind::External, static_cast<std::int16_t>(i), 0}; }
  static VarId stamp(int i) { return {VarKind::Stamp, static_cast<std::int16_t>(i), 0}; }
  static VarId slot_of(int v, int s) {
    return {VarKind::Slot, static_cast<std::int16_t>(v), static_cast<std::int16_t>(s)};
  }
  std::string str() const;  // "y0", "x1", "x1.2"
};

struct PropFactor {
  bool pauli_jordan = false;  // false: W+(a,b); true: PJ(a,b) = W+(a,b) - W+(b,a)
  VarId a, b;
  auto operator<=>(const PropFactor&) const = default;
};

struct KernelFactor {
  std::int16_t vertex = 0;
  std::int16_t n = 0;  // slots vertex.1 .. vertex.n
  auto operator<=>(const KernelFactor&) const = default;
};

struct DiagramTerm {
  int kappa_power = 0;
  int hbar_power = 0;  // net grading: propagator lines minus time-stamp vertices
  Coeff coeff = Coeff::one();
  std::vector<std::pair<VarId, VarId>> thetas;  // theta(first - second), time refs only
  std::vector<KernelFactor> kernels;
  std::vector<PropFactor> props;
  std::vector<VarId> fields;
  std::vector<std::int16_t> cutoffs;  // one g per time stamp

  int hbar_lines() const { return hbar_power + kappa_power; }
};

struct TermSum {
  std::vector<DiagramTerm> terms;
};

// ---------------------------------------------------------------------------
// constructors and sum algebra

TermSum make_field_monomial(const std::vector<VarId>& points);

// kernel + cutoff + n slot fields; carries kappa, 1/hbar and the -1/n! weight
// of one interaction vertex when with_couplings is set.
TermSum make_vertex_monomial(int stamp, int n, bool with_couplings = true);

TermSum add(TermSum a, const TermSum& b);
TermSum scale(TermSum a, const Coeff& c);

// ---------------------------------------------------------------------------
// products

// Wick product: sum over contraction levels c with hbar^c and W+(a in A, b in B).
TermSum star_wick(const TermSum& A, const TermSum& B);

struct Stamped {
  VarId time_ref;
  TermSum sum;
};

TermSum t_product(const std::vector<Stamped>& ops);     // latest leftmost
TermSum tbar_product(const std::vector<Stamped>& ops);  // earliest leftmost

// ---------------------------------------------------------------------------
// rewrites

// replace every PJ(a,b) by W+(a,b) - W+(b,a)
TermSum expand_pauli_jordan(const TermSum& s);

// decompose every theta-product into total-order indicator sectors over all
// time refs of the term (canonical chain form); contradictory terms vanish
TermSum expand_theta_sectors(const TermSum& s);

// relabel stamps and slots to normal form, sort factors, merge equal terms
TermSum canonicalize(const TermSum& s);

// strip one global phase (+1, -1, +i, -i) making the first canonical
// coefficient positive real; returns the normalized sum and the stripped phase
// as an i-power 0..3. Throws if the leading coefficient is not phase-pure.
std::pair<TermSum, int> normalize_global_phase(const TermSum& s);

bool identical(const TermSum& a, const TermSum& b);

// ---------------------------------------------------------------------------
// interaction descriptor and expansions

struct EffectiveInteraction {
  int n = 4;
  std::vector<std::array<int, 4>> derivs;  // one multi-index per field factor; empty = none

  // ghat(-sum k) * prod_j prod_mu (i k^j_mu)^{a_j_mu} * Lambda_n(k), with
  // Lambda_1 == 1 and the lambda_p -> 0 limit handled exactly.
  std::complex<double> integrand(
      const std::function<std::complex<double>(const Four&)>& ghat,
      const MomentumConfig& cfg, double lambda_p) const;

  bool has_kernel() const { return n >= 2; }
  std::string position_space_form() const;
};

enum class RRoute { ClosedDisplay, GeneralFormula };

struct RResult {
  TermSum sum;
  bool checked = true;  // false when only the general alternating formula backs it
};

// retarded coefficient of order k against the single-field observable at y0;
// includes the 1/k! series weight and the per-vertex couplings.
RResult r_product(int k, const EffectiveInteraction& vertex,
                  RRoute route = RRoute::ClosedDisplay);

// diagram-rule generator for the same coefficient
TermSum feynman_terms(int k, int n);

struct Topology {
  int k = 0;
  int n = 0;
  int lines = 0;                                    // external line included
  std::vector<std::array<int, 3>> edges;            // (later pos, earlier pos, t)
  Rational display_prefactor{0, 1};                 // (1/k!)(1/n!)^k prod_e 1/t_e!
  int hbar_net = 0;                                 // lines - k
  auto operator<=>(const Topology&) const = default;
};

std::vector<Topology> feynman_topologies(int k, int n);

struct ExpandSummary {
  int term_count = 0;
  int topology_count = 0;
  std::map<int, int> hbar_histogram;  // net hbar power -> #terms
};

ExpandSummary summarize(const TermSum& s, int k, int n);

// ---------------------------------------------------------------------------
// rendering (implemented in diagram_render.cpp)

std::string to_canonical_json(const TermSum& s);
std::string to_text(const TermSum& s);

}  // namespace qst::diag
