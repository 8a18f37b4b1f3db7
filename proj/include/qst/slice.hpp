#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "qst/geometry.hpp"

namespace qst::slicing {

// 1-D or 2-D momentum-space slice through the n-point kernel.
struct SliceSpec {
  struct Axis {
    int momentum_index = 1;  // 1-based j in 1..n
    int component = 0;       // mu in 0..3
  };
  std::vector<Axis> active_axes;  // length 1 or 2, distinct
  MomentumConfig fixed_values;    // supplies every inactive component
  double k_max = 10.0;
  int points = 256;  // power of two, >= 16
};

struct SliceResult {
  std::vector<std::vector<double>> positions;  // one vector per active axis
  std::vector<std::complex<double>> values;    // row-major for 2-D
  double lambda_p = 1.0;
  double mass_concentration = 0.0;  // l1 fraction in the central 10% window
  bool nyquist_flag = false;
};

// Inverse Fourier transform of the sampled kernel on the slice, e^{+ikx}
// convention with 1/(2pi) per active axis, centered grids.
SliceResult gamma_slice(const SliceSpec& spec, double lambda_p);

// Same transform applied to caller-supplied samples on the slice grid
// (used for the split-kernel linearity checks).
SliceResult transform_samples(const SliceSpec& spec, double lambda_p,
                              const std::vector<std::complex<double>>& samples);

// Kernel samples on the slice grid, row-major.
std::vector<double> sample_slice(const SliceSpec& spec, double lambda_p);

struct LimitRow {
  double lambda_p = 0.0;
  double sup_dev = 0.0;  // max |Lambda - 1| over the probe set
  double bound = 0.0;    // max (beta_+^2 + beta_-^2)/12 over the probe set
};

// Commutative-limit table over seeded probe configs in the ball |k^j| <= R.
std::vector<LimitRow> commutative_limit_table(double radius, int probes,
                                              const std::vector<double>& lambda_values,
                                              int n = 2,
                                              std::uint64_t seed = 12345);

}  // namespace qst::slicing
