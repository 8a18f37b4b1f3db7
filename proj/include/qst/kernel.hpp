#pragma once

#include <complex>
#include <vector>

#include "qst/geometry.hpp"

namespace qst::kernel {

struct BetaPair {
  Three v_plus{0.0, 0.0, 0.0};
  Three v_minus{0.0, 0.0, 0.0};
  double beta_plus = 0.0;
  double beta_minus = 0.0;
  double lambda_p = 1.0;
};

struct KernelSplit {
  double total = 0.0;
  double delta_part = 0.0;
  double continuous_part = 0.0;
};

struct SphereQuadrature {
  struct Node {
    Three e;
    double weight;
  };
  std::vector<Node> nodes;  // weights sum to 1
  int order = 0;
};

// v_pm = sum_{j<l} (k0^j kvec^l - k0^l kvec^j +- kvec^j x kvec^l),
// beta_pm = (lambda^2/2) |v_pm|.
BetaPair beta_pair(const MomentumConfig& cfg, double lambda_p);

// (1/2)(sinc beta_+ + sinc beta_-)
double lambda_closed(const MomentumConfig& cfg, double lambda_p);

// Product Gauss-Legendre(cos theta) x trapezoid(phi) rule on S^2, weights
// normalized to total 1. n_phi defaults to 2*order.
SphereQuadrature make_sphere_quadrature(int order, int n_phi = 0);

// Two-sheet sphere average of exp(i (lambda^2/2) v_pm . e); independent oracle
// for lambda_closed. Imaginary part is a numerical residual.
std::complex<double> lambda_quadrature(const MomentumConfig& cfg, double lambda_p,
                                       const SphereQuadrature& quad);

// delta_part = exp(-beta_+^2 - beta_-^2), continuous_part = total - delta_part.
KernelSplit lambda_split(const MomentumConfig& cfg, double lambda_p);

}  // namespace qst::kernel
