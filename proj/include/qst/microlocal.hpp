#pragma once

#include <vector>

#include "qst/geometry.hpp"

namespace qst::micro {

enum class VarietyClass { InBoth, InPlusOnly, InMinusOnly, Off };

struct DirectionClass {
  VarietyClass cls = VarietyClass::Off;
  double residual_plus = 0.0;   // |v_+| / scale
  double residual_minus = 0.0;  // |v_-| / scale
};

enum class FitStatus { Fitted, ConstantSentinel, Underflow };

struct DecayReport {
  MomentumConfig direction;
  double asymptote = 0.0;
  double fitted_exponent = 0.0;  // NaN when status != Fitted
  double fit_residual = 0.0;
  std::pair<double, double> t_range{0.0, 0.0};
  int samples = 0;
  FitStatus status = FitStatus::Fitted;
};

// The lambda-free sheet vector v_sign; cfg lies on the sign-variety iff zero.
Three variety_residual(const MomentumConfig& cfg, int sign);

// Scale-free membership test: residuals normalized by max_{j<l} |k^j||k^l|.
DirectionClass classify_direction(const MomentumConfig& cfg, double tol = 1e-9);

// Evaluate Lambda_n(t*cfg) on a log grid and fit the tail decay.
DecayReport ray_decay(const MomentumConfig& cfg, double lambda_p, double t_min,
                      double t_max, int samples);

// Containment test for the singular-support candidate set: x_cfg on the joint
// variety and x_cfg - lambda*k_cfg on it for every sampled lambda.
bool wf_candidate(const MomentumConfig& x_cfg, const MomentumConfig& k_cfg,
                  const std::vector<double>& lambda_samples, double tol = 1e-9);

}  // namespace qst::micro
