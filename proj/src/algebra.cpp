#include "qst/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace qst::algebra {

namespace {

void require_unit(const SigmaPoint& sigma) {
  if (std::abs(norm3(sigma.e) - 1.0) > 1e-12)
    throw std::invalid_argument("SigmaPoint: e must be a unit vector");
  if (sigma.sign != 1 && sigma.sign != -1)
    throw std::invalid_argument("SigmaPoint: sign must be +1 or -1");
}

void require_positive(double lambda_p) {
  if (!(lambda_p > 0.0)) throw std::invalid_argument("lambda_p must be positive");
}

}  // namespace

double sigma_bilinear(const Four& k1, const Four& k2, const SigmaPoint& sigma) {
  const Three a = spatial(k1), b = spatial(k2);
  return k1[0] * dot3(sigma.e, b) - k2[0] * dot3(sigma.e, a) +
         sigma.sign * dot3(sigma.e, cross3(a, b));
}

Complex twist_phase(const Four& k1, const Four& k2, const SigmaPoint& sigma,
                    double lambda_p) {
  require_unit(sigma);
  require_positive(lambda_p);
  const double arg = 0.5 * lambda_p * lambda_p * sigma_bilinear(k1, k2, sigma);
  return std::polar(1.0, arg);
}

WeylElement weyl_product(const WeylElement& a, const WeylElement& b,
                         const SigmaPoint& sigma, double lambda_p) {
  WeylElement out;
  out.momentum = add4(a.momentum, b.momentum);
  out.phase = a.phase * b.phase * twist_phase(a.momentum, b.momentum, sigma, lambda_p);
  return out;
}

Complex optimal_state_eval(const Four& k, const Four& x, double lambda_p) {
  require_positive(lambda_p);
  const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + k[3] * k[3];
  const double kx = k[0] * x[0] + k[1] * x[1] + k[2] * x[2] + k[3] * x[3];
  return std::exp(-0.5 * lambda_p * lambda_p * k2) * std::polar(1.0, kx);
}

StateFunctional optimal_state(const Four& x, double lambda_p) {
  require_positive(lambda_p);
  StateFunctional s;
  s.x = x;
  s.lambda_p = lambda_p;
  s.eval = [x, lambda_p](const Four& k) { return optimal_state_eval(k, x, lambda_p); };
  return s;
}

Moments state_moments(const StateFunctional& s, int mu_index, double step) {
  if (mu_index < 0 || mu_index > 3)
    throw std::invalid_argument("state_moments: mu_index must be in 0..3");
  if (!(step > 0.0)) throw std::invalid_argument("state_moments: step must be positive");

  const auto g = [&](double t) {
    Four k{0.0, 0.0, 0.0, 0.0};
    k[mu_index] = t;
    return s.eval(k);
  };
  const auto d1 = [&](double h) {
    return (-g(2 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2 * h)) / (12.0 * h);
  };
  const auto d2 = [&](double h) {
    return (-g(2 * h) + 16.0 * g(h) - 30.0 * g(0.0) + 16.0 * g(-h) - g(-2 * h)) /
           (12.0 * h * h);
  };
  // one Richardson step on the O(h^4) stencils
  const Complex g1 = d1(step / 2) + (d1(step / 2) - d1(step)) / 15.0;
  const Complex g2 = d2(step / 2) + (d2(step / 2) - d2(step)) / 15.0;

  Moments m;
  m.mean = (Complex(0.0, -1.0) * g1).real();
  m.variance = (-g2 + g1 * g1).real();
  if (m.variance < -1e-6)
    throw std::runtime_error("state_moments: negative variance, differentiation failed");
  return m;
}

std::pair<bool, bool> check_stur(const std::array<double, 4>& deltas, double lambda_p) {
  require_positive(lambda_p);
  for (double d : deltas)
    if (!std::isfinite(d)) throw std::invalid_argument("check_stur: deltas must be finite");
  const double half = 0.5 * lambda_p * lambda_p;
  const bool time_space = deltas[0] * (deltas[1] + deltas[2] + deltas[3]) >= half;
  const bool space_space =
      deltas[1] * deltas[2] + deltas[1] * deltas[3] + deltas[2] * deltas[3] >= half;
  return {time_space, space_space};
}

Complex integral_functional(const TestFunction& f, const Four& k) {
  if (!f.fhat) throw std::invalid_argument("integral_functional: fhat not set");
  return f.fhat(scale4(-1.0, k));
}

}  // namespace qst::algebra
