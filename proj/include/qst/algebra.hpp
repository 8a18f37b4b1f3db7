#pragma once

#include <complex>
#include <functional>
#include <utility>

#include "qst/geometry.hpp"

namespace qst::algebra {

using Complex = std::complex<double>;

// Point of the base Sigma_1: unit vector e plus the sheet sign. The induced
// antisymmetric matrix is sigma^{0i} = e_i, sigma^{ij} = sign * eps_{ijk} e_k.
struct SigmaPoint {
  Three e{0.0, 0.0, 1.0};
  int sign = +1;
};

struct WeylElement {
  Four momentum{0.0, 0.0, 0.0, 0.0};
  Complex phase{1.0, 0.0};
};

// A state known through its values on Weyl generators, centered at x.
struct StateFunctional {
  std::function<Complex(const Four&)> eval;
  Four x{0.0, 0.0, 0.0, 0.0};
  double lambda_p = 1.0;
};

// Test function carried in momentum space only.
struct TestFunction {
  std::function<Complex(const Four&)> fhat;
};

// k1_mu sigma^{mu nu} k2_nu evaluated directly on covector components.
double sigma_bilinear(const Four& k1, const Four& k2, const SigmaPoint& sigma);

Complex twist_phase(const Four& k1, const Four& k2, const SigmaPoint& sigma,
                    double lambda_p);

WeylElement weyl_product(const WeylElement& a, const WeylElement& b,
                         const SigmaPoint& sigma, double lambda_p);

// Best-localized state value on e^{ikq}: exp(-(lambda^2/2) sum_nu k_nu^2) e^{ik.x},
// the Euclidean sum running over all four components.
Complex optimal_state_eval(const Four& k, const Four& x, double lambda_p);

StateFunctional optimal_state(const Four& x, double lambda_p);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// First and second central moment of q^mu in the given state, from 5-point
// central differences of s.eval along the mu axis plus one Richardson step.
Moments state_moments(const StateFunctional& s, int mu_index, double step);

// (time-space inequality, space-space inequality)
std::pair<bool, bool> check_stur(const std::array<double, 4>& deltas, double lambda_p);

// I(f) on a Weyl generator: fhat(-k). Sigma-independent.
Complex integral_functional(const TestFunction& f, const Four& k);

}  // namespace qst::algebra
