#include "qst/microlocal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qst/kernel.hpp"
#include "qst/numerics.hpp"

namespace qst::micro {

namespace {

double pair_scale(const MomentumConfig& cfg) {
  double scale = 0.0;
  for (std::size_t j = 0; j < cfg.size(); ++j)
    for (std::size_t l = j + 1; l < cfg.size(); ++l)
      scale = std::max(scale, norm4(cfg[j]) * norm4(cfg[l]));
  return scale;
}

bool in_variety(const MomentumConfig& cfg, int sign, double tol) {
  const Three v = variety_residual(cfg, sign);
  return norm3(v) <= tol * pair_scale(cfg);
}

}  // namespace

Three variety_residual(const MomentumConfig& cfg, int sign) {
  if (cfg.size() < 2)
    throw std::invalid_argument("variety_residual: varieties need n >= 2");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("variety_residual: sign must be +1 or -1");
  // lambda_p only scales the residual into beta; use 1.
  const kernel::BetaPair bp = kernel::beta_pair(cfg, 1.0);
  return sign > 0 ? bp.v_plus : bp.v_minus;
}

DirectionClass classify_direction(const MomentumConfig& cfg, double tol) {
  if (cfg.size() < 2)
    throw std::invalid_argument("classify_direction: need n >= 2");
  const double scale = pair_scale(cfg);
  if (scale == 0.0)
    throw std::invalid_argument("classify_direction: all momenta zero, no direction");

  DirectionClass d;
  d.residual_plus = norm3(variety_residual(cfg, +1)) / scale;
  d.residual_minus = norm3(variety_residual(cfg, -1)) / scale;
  const bool in_plus = d.residual_plus <= tol;
  const bool in_minus = d.residual_minus <= tol;
  if (in_plus && in_minus)
    d.cls = VarietyClass::InBoth;
  else if (in_plus)
    d.cls = VarietyClass::InPlusOnly;
  else if (in_minus)
    d.cls = VarietyClass::InMinusOnly;
  else
    d.cls = VarietyClass::Off;
  return d;
}

DecayReport ray_decay(const MomentumConfig& cfg, double lambda_p, double t_min,
                      double t_max, int samples) {
  if (!(t_max > t_min && t_min > 0.0))
    throw std::invalid_argument("ray_decay: need t_max > t_min > 0");
  if (samples < 8) throw std::invalid_argument("ray_decay: samples must be >= 8");

  DecayReport rep;
  rep.direction = cfg;
  rep.t_range = {t_min, t_max};
  rep.samples = samples;

  std::vector<double> ts(samples), vals(samples);
  const double lr = std::log(t_max / t_min);
  for (int i = 0; i < samples; ++i) {
    ts[i] = t_min * std::exp(lr * i / (samples - 1));
    vals[i] = kernel::lambda_closed(scale_config(ts[i], cfg), lambda_p);
  }

  const int n_dec = std::max(1, samples / 10);
  double asy = 0.0;
  for (int i = samples - n_dec; i < samples; ++i) asy += vals[i];
  asy /= n_dec;
  rep.asymptote = asy;

  const int tail0 = samples / 2;
  double dmax = 0.0, vmax = 0.0;
  for (int i = tail0; i < samples; ++i) {
    dmax = std::max(dmax, std::abs(vals[i] - asy));
    vmax = std::max(vmax, std::abs(vals[i]));
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (vmax < 1e-300 && std::abs(asy) < 1e-300) {
    rep.status = FitStatus::Underflow;
    rep.fitted_exponent = nan;
    return rep;
  }
  if (dmax < 1e-13 * std::max(1.0, std::abs(asy))) {
    // exactly constant along the ray (joint-variety direction)
    rep.status = FitStatus::ConstantSentinel;
    rep.fitted_exponent = nan;
    return rep;
  }

  // An asymptote consistent with zero at the fit scale is noise; fit raw values.
  const double a_fit = (std::abs(asy) < 1e-2 * dmax) ? 0.0 : asy;

  std::vector<double> lx, ly;
  for (int i = tail0; i < samples; ++i) {
    const double d = std::abs(vals[i] - a_fit);
    if (d > 0.0) {
      lx.push_back(std::log(ts[i]));
      ly.push_back(std::log(d));
    }
  }
  if (lx.size() < 2) {
    rep.status = FitStatus::Underflow;
    rep.fitted_exponent = nan;
    return rep;
  }
  num::LineFit fit = num::fit_line(lx, ly);

  if (fit.rms_residual > 0.15) {
    // oscillatory tail: fit the envelope through local maxima instead
    std::vector<double> px, py;
    for (std::size_t i = 1; i + 1 < lx.size(); ++i) {
      if (ly[i] >= ly[i - 1] && ly[i] >= ly[i + 1]) {
        px.push_back(lx[i]);
        py.push_back(ly[i]);
      }
    }
    if (px.size() >= 5) fit = num::fit_line(px, py);
  }
  rep.fitted_exponent = fit.slope;
  rep.fit_residual = fit.rms_residual;
  return rep;
}

bool wf_candidate(const MomentumConfig& x_cfg, const MomentumConfig& k_cfg,
                  const std::vector<double>& lambda_samples, double tol) {
  if (x_cfg.size() != k_cfg.size())
    throw std::invalid_argument("wf_candidate: x and k tuples must share n");
  if (lambda_samples.empty())
    throw std::invalid_argument("wf_candidate: need at least one lambda sample");

  const auto in_joint = [tol](const MomentumConfig& c) {
    return in_variety(c, +1, tol) || in_variety(c, -1, tol);
  };
  if (!in_joint(x_cfg)) return false;
  for (double lam : lambda_samples) {
    MomentumConfig shifted(x_cfg.size());
    for (std::size_t j = 0; j < x_cfg.size(); ++j)
      shifted[j] = add4(x_cfg[j], scale4(-lam, k_cfg[j]));
    if (!in_joint(shifted)) return false;
  }
  return true;
}

}  // namespace qst::micro
