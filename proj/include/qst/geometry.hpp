#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace qst {

using Four = std::array<double, 4>;   // covector (k0, k1, k2, k3)
using Three = std::array<double, 3>;

// Ordered tuple of n momentum covectors.
using MomentumConfig = std::vector<Four>;

inline Three spatial(const Four& k) { return {k[1], k[2], k[3]}; }

inline double dot3(const Three& a, const Three& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Three cross3(const Three& a, const Three& b) {
  return {a[1] * b[2] - a[2] * b[1],
          a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double norm3(const Three& a) { return std::sqrt(dot3(a, a)); }

// Euclidean norm over all four components.
inline double norm4(const Four& k) {
  return std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + k[3] * k[3]);
}

inline Three add3(const Three& a, const Three& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Three sub3(const Three& a, const Three& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Three scale3(double c, const Three& a) { return {c * a[0], c * a[1], c * a[2]}; }

inline Four add4(const Four& a, const Four& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Four scale4(double c, const Four& a) {
  return {c * a[0], c * a[1], c * a[2], c * a[3]};
}

inline MomentumConfig scale_config(double t, const MomentumConfig& cfg) {
  MomentumConfig out;
  out.reserve(cfg.size());
  for (const auto& k : cfg) out.push_back(scale4(t, k));
  return out;
}

}  // namespace qst
