#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qst/kernel.hpp"
#include "qst/numerics.hpp"
#include "qst/slice.hpp"

using namespace qst;
using namespace qst::slicing;

namespace {

double l2(const std::vector<std::complex<double>>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double l2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

SliceSpec ladder_spec(double k_max, int points) {
  SliceSpec spec;
  spec.active_axes = {{1, 1}};
  spec.fixed_values = {{0.0, 0.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}};
  spec.k_max = k_max;
  spec.points = points;
  return spec;
}

}  // namespace

TEST_CASE("unit kernel transforms to a grid delta") {
  SliceSpec spec;
  spec.active_axes = {{1, 0}};
  spec.fixed_values = {{0.0, 0.0, 0.0, 0.0}};  // n = 1: kernel is identically 1
  spec.k_max = 64.0;
  spec.points = 256;

  const auto res = gamma_slice(spec, 1.0);
  REQUIRE(res.values.size() == 256);
  REQUIRE(res.positions.size() == 1);
  CHECK(res.positions[0][128] == 0.0);

  // peak value K/pi at x = 0, everything else numerically zero
  CHECK(std::abs(res.values[128].real() - 20.371832715762604) < 1e-9);
  CHECK(std::abs(res.values[128].imag()) < 1e-9);
  CHECK(res.mass_concentration >= 0.99);
  CHECK_FALSE(res.nyquist_flag);

  // Parseval: ||G||_2 = (dk/2pi) sqrt(N) ||Lambda||_2
  const auto raw = sample_slice(spec, 1.0);
  const double dk = 2.0 * spec.k_max / spec.points;
  const double expect = dk / (2.0 * M_PI) * std::sqrt(256.0) * l2(raw);
  CHECK(std::abs(l2(res.values) - expect) < 1e-10 * expect);
}

TEST_CASE("concentration grows as the length scale shrinks") {
  const SliceSpec spec = ladder_spec(256.0, 1024);
  const double frozen[3] = {0.3147, 0.9963, 0.9969};
  const double lams[3] = {2.0, 1.0, 0.5};
  double conc[3];
  for (int i = 0; i < 3; ++i) {
    const auto res = gamma_slice(spec, lams[i]);
    conc[i] = res.mass_concentration;
    CHECK(std::abs(conc[i] - frozen[i]) < 1e-3);
  }
  CHECK(conc[0] < conc[1]);
  CHECK(conc[1] < conc[2]);
}

TEST_CASE("transform is linear across the kernel split") {
  const SliceSpec spec = ladder_spec(32.0, 64);
  const double lam = 1.0;
  const int N = spec.points;
  const double dk = 2.0 * spec.k_max / N;

  std::vector<std::complex<double>> del(N), cont(N);
  MomentumConfig cfg = spec.fixed_values;
  for (int m = 0; m < N; ++m) {
    cfg[0][1] = (m - N / 2) * dk;
    const auto sp = kernel::lambda_split(cfg, lam);
    del[m] = sp.delta_part;
    cont[m] = sp.continuous_part;
  }
  const auto td = transform_samples(spec, lam, del);
  const auto tc = transform_samples(spec, lam, cont);
  const auto full = gamma_slice(spec, lam);
  for (int p = 0; p < N; ++p) {
    const auto sum = td.values[p] + tc.values[p];
    CHECK(std::abs(sum - full.values[p]) < 1e-12);
  }
}

TEST_CASE("two-axis slice keeps the Parseval identity") {
  SliceSpec spec;
  spec.active_axes = {{1, 1}, {2, 2}};
  spec.fixed_values = {{0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}};
  spec.k_max = 8.0;
  spec.points = 32;

  const auto res = gamma_slice(spec, 1.0);
  REQUIRE(res.positions.size() == 2);
  REQUIRE(res.positions[0].size() == 32);
  REQUIRE(res.values.size() == 32u * 32u);

  const auto raw = sample_slice(spec, 1.0);
  const double dk = 2.0 * spec.k_max / spec.points;
  const double fac = dk / (2.0 * M_PI) * std::sqrt(32.0);
  const double expect = fac * fac * l2(raw);
  CHECK(std::abs(l2(res.values) - expect) < 1e-10 * expect);
}

TEST_CASE("truncation flag fires on slowly decaying off-variety slices") {
  const auto res = gamma_slice(ladder_spec(256.0, 256), 0.05);
  CHECK(res.nyquist_flag);
}

TEST_CASE("slice specs are validated") {
  CHECK_THROWS_AS(gamma_slice(ladder_spec(256.0, 100), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_slice(ladder_spec(256.0, 8), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_slice(ladder_spec(0.0, 64), 1.0), std::invalid_argument);

  SliceSpec spec = ladder_spec(32.0, 64);
  spec.active_axes.clear();
  CHECK_THROWS_AS(gamma_slice(spec, 1.0), std::invalid_argument);
  spec.active_axes = {{1, 1}, {1, 1}};
  CHECK_THROWS_AS(gamma_slice(spec, 1.0), std::invalid_argument);
  spec.active_axes = {{3, 1}};
  CHECK_THROWS_AS(gamma_slice(spec, 1.0), std::invalid_argument);
  spec.active_axes = {{1, 4}};
  CHECK_THROWS_AS(gamma_slice(spec, 1.0), std::invalid_argument);

  spec = ladder_spec(32.0, 64);
  CHECK_THROWS_AS(transform_samples(spec, 1.0, std::vector<std::complex<double>>(5)),
                  std::invalid_argument);
}

TEST_CASE("deviation table shrinks at fourth order") {
  const std::vector<double> lams{1.0, 0.5, 0.25, 0.125};
  const auto rows = commutative_limit_table(1.0, 64, lams, 2);
  REQUIRE(rows.size() == 4);

  std::vector<double> lx, ly;
  for (const auto& row : rows) {
    CHECK(row.sup_dev <= row.bound);
    CHECK(row.sup_dev > 0.0);
    lx.push_back(std::log(row.lambda_p));
    ly.push_back(std::log(row.sup_dev));
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double ratio = rows[i].bound / rows[i + 1].bound;
    CHECK(std::abs(ratio - 16.0) < 1e-9 * 16.0);
  }
  const auto fit = num::fit_line(lx, ly);
  CHECK(fit.slope > 3.9);
  CHECK(fit.slope < 4.1);

  // lambda_p = 0 is the exact commutative point
  const auto zero = commutative_limit_table(1.0, 16, {0.0}, 2);
  CHECK(zero[0].sup_dev == 0.0);
  CHECK(zero[0].bound == 0.0);

  // seeded, hence reproducible
  const auto again = commutative_limit_table(1.0, 64, lams, 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].sup_dev == again[i].sup_dev);
    CHECK(rows[i].bound == again[i].bound);
  }

  CHECK_THROWS_AS(commutative_limit_table(1.0, 5, lams, 2), std::invalid_argument);
  CHECK_THROWS_AS(commutative_limit_table(0.0, 64, lams, 2), std::invalid_argument);
  CHECK_THROWS_AS(commutative_limit_table(1.0, 64, {-1.0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(commutative_limit_table(1.0, 64, lams, 0), std::invalid_argument);
}
