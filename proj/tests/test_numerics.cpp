#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qst/numerics.hpp"

using qst::num::fft_pow2;
using qst::num::fit_line;
using qst::num::gauss_legendre;
using qst::num::sinc;
using qst::num::SplitMix64;

TEST_CASE("sinc values and small-argument branch") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(0.5) == doctest::Approx(0.958851077208406).epsilon(1e-15));
  CHECK(sinc(-0.5) == sinc(0.5));
  // Taylor branch agrees with the defining series where sin(x)/x cancels badly
  const double x = 1e-5;
  CHECK(std::abs(sinc(x) - (1.0 - x * x / 6.0)) < 1e-18);
  CHECK(std::abs(sinc(M_PI)) < 1e-15);
}

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
  const auto gl = gauss_legendre(5);
  REQUIRE(gl.x.size() == 5);
  double wsum = 0.0;
  for (double w : gl.w) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));

  // order 5 is exact through degree 9
  double i8 = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) i8 += gl.w[i] * std::pow(gl.x[i], 8);
  CHECK(i8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));

  double i9 = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) i9 += gl.w[i] * std::pow(gl.x[i], 9);
  CHECK(std::abs(i9) < 1e-14);
}

TEST_CASE("fft matches a direct DFT and round-trips") {
  SplitMix64 rng(7);
  const int N = 16;
  std::vector<std::complex<double>> a(N);
  for (auto& v : a) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};

  auto fwd = a;
  fft_pow2(fwd, -1);
  for (int k = 0; k < N; ++k) {
    std::complex<double> direct(0.0, 0.0);
    for (int m = 0; m < N; ++m)
      direct += a[m] * std::polar(1.0, -2.0 * M_PI * m * k / N);
    CHECK(std::abs(fwd[k] - direct) < 1e-12);
  }

  auto back = fwd;
  fft_pow2(back, +1);
  for (int m = 0; m < N; ++m) CHECK(std::abs(back[m] / double(N) - a[m]) < 1e-13);

  std::vector<std::complex<double>> bad(10);
  CHECK_THROWS_AS(fft_pow2(bad, -1), std::invalid_argument);
}

TEST_CASE("line fit recovers slope and intercept") {
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(0.1 * i);
    y.push_back(-2.0 * 0.1 * i + 0.7);
  }
  const auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(f.rms_residual < 1e-12);
}

TEST_CASE("splitmix64 sequence is frozen") {
  SplitMix64 rng(42);
  CHECK(rng.next_u64() == 0xbdd732262feb6e95ull);
  CHECK(rng.next_u64() == 0x28efe333b266f103ull);

  SplitMix64 a(42), b(42);
  a.next_u64();
  b.next_u64();
  const double da = a.next_double();
  CHECK(da == b.next_double());
  CHECK(da == doctest::Approx(0.1599103928769201).epsilon(1e-15));
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform(-3.0, 5.0);
    CHECK(u >= -3.0);
    CHECK(u < 5.0);
  }
}
