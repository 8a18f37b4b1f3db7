#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qst::num {

// sin(x)/x with a Taylor branch near 0 so the commutative-limit fit is not
// polluted by cancellation.
double sinc(double x);

struct GaussLegendre {
  std::vector<double> x;  // nodes on (-1, 1)
  std::vector<double> w;  // weights, sum = 2
};

GaussLegendre gauss_legendre(int order);

// In-place radix-2 FFT, sign = -1 forward (e^{-i2pi mk/N}), +1 inverse
// (e^{+i2pi mk/N}, unnormalized). Size must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// splitmix64: tiny deterministic generator so frozen property-test values are
// identical across platforms (distribution code in libstdc++ is not pinned).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double next_double();                    // uniform [0, 1)
  double uniform(double lo, double hi);    // uniform [lo, hi)

 private:
  std::uint64_t state_;
};

}  // namespace qst::num
