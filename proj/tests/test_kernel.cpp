#include <cmath>
#include <complex>

#include "doctest.h"
#include "qst/kernel.hpp"
#include "qst/numerics.hpp"

using namespace qst;
using namespace qst::kernel;

namespace {

// configs with all pair vectors bounded so the quadrature stays resolvable
MomentumConfig random_config(num::SplitMix64& rng, int n, double vcap = 10.0) {
  MomentumConfig cfg(n);
  for (auto& k : cfg)
    for (auto& c : k) c = rng.uniform(-1.5, 1.5);
  const auto bp = beta_pair(cfg, 1.0);
  const double vmax = std::max(norm3(bp.v_plus), norm3(bp.v_minus));
  if (vmax > vcap) {
    const double s = std::sqrt(vcap / vmax);
    for (auto& k : cfg)
      for (auto& c : k) c *= s;
  }
  return cfg;
}

Three rotate(const Three& v, const Three& axis, double angle) {
  // Rodrigues rotation about a unit axis
  const Three kxv = cross3(axis, v);
  const double kv = dot3(axis, v);
  const double c = std::cos(angle), s = std::sin(angle);
  Three out;
  for (int i = 0; i < 3; ++i) out[i] = v[i] * c + kxv[i] * s + axis[i] * kv * (1.0 - c);
  return out;
}

}  // namespace

TEST_CASE("two-momentum example: beta 0.5 on both sheets") {
  const MomentumConfig cfg{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}};
  const auto bp = beta_pair(cfg, 1.0);
  CHECK(bp.beta_plus == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bp.beta_minus == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lambda_closed(cfg, 1.0) == doctest::Approx(0.958851077208406).epsilon(1e-15));

  const auto split = lambda_split(cfg, 1.0);
  CHECK(split.delta_part == doctest::Approx(0.6065306597126334).epsilon(1e-15));
  CHECK(split.continuous_part == doctest::Approx(0.3523204174957726).epsilon(1e-14));
  CHECK(split.total == split.delta_part + split.continuous_part);
}

TEST_CASE("four-momentum configuration on exactly one sheet") {
  const MomentumConfig cfg{{-2.0, 1.0, 0.0, 0.0},
                           {10.5, 0.0, 1.0, 0.0},
                           {-12.0, 0.0, 0.0, 1.0},
                           {0.0, 1.0, 2.0, 3.0}};
  const auto bp = beta_pair(cfg, 1.0);
  // integer cancellation puts v_+ exactly at zero, v_- at (-4, 6, -4)
  CHECK(bp.v_plus[0] == 0.0);
  CHECK(bp.v_plus[1] == 0.0);
  CHECK(bp.v_plus[2] == 0.0);
  CHECK(bp.v_minus[0] == -4.0);
  CHECK(bp.v_minus[1] == 6.0);
  CHECK(bp.v_minus[2] == -4.0);
  CHECK(bp.beta_plus == 0.0);
  CHECK(bp.beta_minus == doctest::Approx(4.123105625617661).epsilon(1e-15));
  const double expected = 0.5 * (1.0 + num::sinc(bp.beta_minus));
  CHECK(lambda_closed(cfg, 1.0) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("lambda scaling: beta grows with lambda_p^2") {
  const MomentumConfig cfg{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}};
  const auto b1 = beta_pair(cfg, 1.0);
  const auto b2 = beta_pair(cfg, 2.0);
  CHECK(b2.beta_plus == doctest::Approx(4.0 * b1.beta_plus).epsilon(1e-15));
  CHECK_THROWS_AS(beta_pair(cfg, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lambda_closed(cfg, -1.0), std::invalid_argument);
}

TEST_CASE("single momentum has no pairs: kernel is 1") {
  const MomentumConfig cfg{{3.0, -2.0, 1.0, 5.0}};
  CHECK(lambda_closed(cfg, 1.0) == 1.0);
  const auto bp = beta_pair(cfg, 1.0);
  CHECK(bp.beta_plus == 0.0);
  CHECK(bp.beta_minus == 0.0);
}

TEST_CASE("sphere quadrature weights are a probability measure") {
  const auto q = make_sphere_quadrature(16);
  CHECK(q.nodes.size() == 16u * 32u);
  double wsum = 0.0;
  for (const auto& n : q.nodes) {
    wsum += n.weight;
    CHECK(std::abs(norm3(n.e) - 1.0) < 1e-14);
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(make_sphere_quadrature(0), std::invalid_argument);
}

TEST_CASE("quadrature oracle agrees with the closed form") {
  num::SplitMix64 rng(303);
  const auto quad = make_sphere_quadrature(64, 128);
  for (int i = 0; i < 30; ++i) {
    const int n = 2 + static_cast<int>(rng.next_double() * 3.0) % 3;
    const auto cfg = random_config(rng, n);
    const double closed = lambda_closed(cfg, 1.0);
    const auto lq = lambda_quadrature(cfg, 1.0, quad);
    CHECK(std::abs(lq - std::complex<double>(closed, 0.0)) < 1e-8);
  }
}

TEST_CASE("kernel invariances") {
  num::SplitMix64 rng(404);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng.next_double() * 3.0) % 3;
    const auto cfg = random_config(rng, n);
    const double v = lambda_closed(cfg, 1.0);

    CHECK(std::abs(v) <= 1.0 + 1e-12);

    MomentumConfig neg = cfg;
    for (auto& k : neg)
      for (auto& c : k) c = -c;
    CHECK(lambda_closed(neg, 1.0) == doctest::Approx(v).epsilon(1e-12));

    // parity: flip the spatial parts only; the sheets trade places
    MomentumConfig par = cfg;
    for (auto& k : par)
      for (int c = 1; c < 4; ++c) k[c] = -k[c];
    const auto bp = beta_pair(cfg, 1.0);
    const auto bpp = beta_pair(par, 1.0);
    CHECK(bpp.beta_plus == doctest::Approx(bp.beta_minus).epsilon(1e-12));
    CHECK(bpp.beta_minus == doctest::Approx(bp.beta_plus).epsilon(1e-12));
    CHECK(lambda_closed(par, 1.0) == doctest::Approx(v).epsilon(1e-12));

    // rotation invariance
    Three axis{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const double an = norm3(axis);
    if (an < 1e-6) continue;
    for (auto& c : axis) c /= an;
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    MomentumConfig rot = cfg;
    for (auto& k : rot) {
      const Three r = rotate(spatial(k), axis, angle);
      k[1] = r[0];
      k[2] = r[1];
      k[3] = r[2];
    }
    CHECK(lambda_closed(rot, 1.0) == doctest::Approx(v).epsilon(1e-11));
  }

  const MomentumConfig zero{{0, 0, 0, 0}, {0, 0, 0, 0}};
  CHECK(lambda_closed(zero, 1.0) == 1.0);
}

TEST_CASE("split parts behave under ray scaling") {
  const MomentumConfig cfg{{1.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}};
  const auto s1 = lambda_split(cfg, 1.0);
  CHECK(s1.total == doctest::Approx(lambda_closed(cfg, 1.0)).epsilon(1e-15));
  // delta part falls off much faster along rays than the total
  const auto s3 = lambda_split(scale_config(3.0, cfg), 1.0);
  CHECK(std::abs(s3.delta_part) < std::abs(s1.delta_part) * 1e-6);
}
