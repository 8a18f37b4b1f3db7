#include "qst/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "qst/numerics.hpp"

namespace qst::kernel {

namespace {
void require_positive(double lambda_p) {
  if (!(lambda_p > 0.0)) throw std::invalid_argument("lambda_p must be positive");
}
}  // namespace

BetaPair beta_pair(const MomentumConfig& cfg, double lambda_p) {
  require_positive(lambda_p);
  BetaPair bp;
  bp.lambda_p = lambda_p;
  const std::size_t n = cfg.size();
  Three E{0.0, 0.0, 0.0};  // pair-summed k0^j kvec^l - k0^l kvec^j
  Three B{0.0, 0.0, 0.0};  // pair-summed kvec^j x kvec^l
  for (std::size_t j = 0; j < n; ++j) {
    const Three kj = spatial(cfg[j]);
    for (std::size_t l = j + 1; l < n; ++l) {
      const Three kl = spatial(cfg[l]);
      E = add3(E, sub3(scale3(cfg[j][0], kl), scale3(cfg[l][0], kj)));
      B = add3(B, cross3(kj, kl));
    }
  }
  bp.v_plus = add3(E, B);
  bp.v_minus = sub3(E, B);
  const double half = 0.5 * lambda_p * lambda_p;
  bp.beta_plus = half * norm3(bp.v_plus);
  bp.beta_minus = half * norm3(bp.v_minus);
  return bp;
}

double lambda_closed(const MomentumConfig& cfg, double lambda_p) {
  const BetaPair bp = beta_pair(cfg, lambda_p);
  return 0.5 * (num::sinc(bp.beta_plus) + num::sinc(bp.beta_minus));
}

SphereQuadrature make_sphere_quadrature(int order, int n_phi) {
  if (order < 1) throw std::invalid_argument("sphere quadrature: order must be >= 1");
  if (n_phi <= 0) n_phi = 2 * order;
  const auto gl = num::gauss_legendre(order);
  double wsum = 0.0;
  for (double w : gl.w) wsum += w;

  SphereQuadrature q;
  q.order = order;
  q.nodes.reserve(static_cast<std::size_t>(order) * n_phi);
  for (int i = 0; i < order; ++i) {
    const double ct = gl.x[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double w = gl.w[i] / (wsum * n_phi);
    for (int p = 0; p < n_phi; ++p) {
      const double phi = 2.0 * M_PI * p / n_phi;
      q.nodes.push_back({{st * std::cos(phi), st * std::sin(phi), ct}, w});
    }
  }
  return q;
}

std::complex<double> lambda_quadrature(const MomentumConfig& cfg, double lambda_p,
                                       const SphereQuadrature& quad) {
  const BetaPair bp = beta_pair(cfg, lambda_p);
  const double half = 0.5 * lambda_p * lambda_p;
  std::complex<double> acc(0.0, 0.0);
  for (const Three* v : {&bp.v_plus, &bp.v_minus}) {
    for (const auto& node : quad.nodes) {
      acc += node.weight * std::polar(1.0, half * dot3(*v, node.e));
    }
  }
  return 0.5 * acc;
}

KernelSplit lambda_split(const MomentumConfig& cfg, double lambda_p) {
  const BetaPair bp = beta_pair(cfg, lambda_p);
  KernelSplit s;
  s.total = 0.5 * (num::sinc(bp.beta_plus) + num::sinc(bp.beta_minus));
  s.delta_part =
      std::exp(-bp.beta_plus * bp.beta_plus - bp.beta_minus * bp.beta_minus);
  s.continuous_part = s.total - s.delta_part;
  return s;
}

}  // namespace qst::kernel
