#include "qst/slice.hpp"

#include <cmath>
#include <stdexcept>

#include "qst/kernel.hpp"
#include "qst/microlocal.hpp"
#include "qst/numerics.hpp"

namespace qst::slicing {

namespace {

void validate(const SliceSpec& spec) {
  const int n = static_cast<int>(spec.fixed_values.size());
  if (n < 1) throw std::invalid_argument("SliceSpec: fixed_values must supply n >= 1");
  if (spec.active_axes.empty() || spec.active_axes.size() > 2)
    throw std::invalid_argument("SliceSpec: need 1 or 2 active axes");
  for (const auto& ax : spec.active_axes) {
    if (ax.momentum_index < 1 || ax.momentum_index > n)
      throw std::invalid_argument("SliceSpec: momentum_index out of range");
    if (ax.component < 0 || ax.component > 3)
      throw std::invalid_argument("SliceSpec: component out of range");
  }
  if (spec.active_axes.size() == 2) {
    const auto& a = spec.active_axes[0];
    const auto& b = spec.active_axes[1];
    if (a.momentum_index == b.momentum_index && a.component == b.component)
      throw std::invalid_argument("SliceSpec: active axes must be distinct");
  }
  if (!(spec.k_max > 0.0)) throw std::invalid_argument("SliceSpec: k_max must be positive");
  const int N = spec.points;
  if (N < 16 || (N & (N - 1)) != 0)
    throw std::invalid_argument("SliceSpec: points must be a power of two >= 16");
}

std::vector<double> axis_k(const SliceSpec& spec) {
  const int N = spec.points;
  const double dk = 2.0 * spec.k_max / N;
  std::vector<double> ks(N);
  for (int m = 0; m < N; ++m) ks[m] = (m - N / 2) * dk;
  return ks;
}

// centered-grid inverse transform along every axis of the row-major array
std::vector<std::complex<double>> centered_ift(std::vector<std::complex<double>> a,
                                               int dims, int N, double dk) {
  const double sign_center = (N / 2) % 2 == 0 ? 1.0 : -1.0;
  const double norm = dk / (2.0 * M_PI);

  const auto apply_1d = [&](std::vector<std::complex<double>>& line) {
    for (int m = 0; m < N; ++m)
      if (m % 2 != 0) line[m] = -line[m];
    num::fft_pow2(line, +1);
    for (int p = 0; p < N; ++p) {
      double s = (p % 2 != 0) ? -1.0 : 1.0;
      line[p] *= norm * sign_center * s;
    }
  };

  if (dims == 1) {
    apply_1d(a);
    return a;
  }
  // rows
  std::vector<std::complex<double>> line(N);
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) line[c] = a[r * N + c];
    apply_1d(line);
    for (int c = 0; c < N; ++c) a[r * N + c] = line[c];
  }
  // columns
  for (int c = 0; c < N; ++c) {
    for (int r = 0; r < N; ++r) line[r] = a[r * N + c];
    apply_1d(line);
    for (int r = 0; r < N; ++r) a[r * N + c] = line[r];
  }
  return a;
}

}  // namespace

std::vector<double> sample_slice(const SliceSpec& spec, double lambda_p) {
  validate(spec);
  const auto ks = axis_k(spec);
  const int N = spec.points;
  MomentumConfig cfg = spec.fixed_values;

  std::vector<double> vals;
  if (spec.active_axes.size() == 1) {
    const auto& ax = spec.active_axes[0];
    vals.resize(N);
    for (int m = 0; m < N; ++m) {
      cfg[ax.momentum_index - 1][ax.component] = ks[m];
      vals[m] = kernel::lambda_closed(cfg, lambda_p);
    }
  } else {
    const auto& a0 = spec.active_axes[0];
    const auto& a1 = spec.active_axes[1];
    vals.resize(static_cast<std::size_t>(N) * N);
    for (int r = 0; r < N; ++r) {
      cfg[a0.momentum_index - 1][a0.component] = ks[r];
      for (int c = 0; c < N; ++c) {
        cfg[a1.momentum_index - 1][a1.component] = ks[c];
        vals[static_cast<std::size_t>(r) * N + c] = kernel::lambda_closed(cfg, lambda_p);
      }
    }
  }
  return vals;
}

SliceResult transform_samples(const SliceSpec& spec, double lambda_p,
                              const std::vector<std::complex<double>>& samples) {
  validate(spec);
  const int N = spec.points;
  const int dims = static_cast<int>(spec.active_axes.size());
  const std::size_t want = dims == 1 ? static_cast<std::size_t>(N)
                                     : static_cast<std::size_t>(N) * N;
  if (samples.size() != want)
    throw std::invalid_argument("transform_samples: sample count mismatch");
  const double dk = 2.0 * spec.k_max / N;
  const double dx = M_PI / spec.k_max;

  SliceResult out;
  out.lambda_p = lambda_p;
  out.values = centered_ift(samples, dims, N, dk);
  out.positions.resize(dims);
  for (int d = 0; d < dims; ++d) {
    out.positions[d].resize(N);
    for (int p = 0; p < N; ++p) out.positions[d][p] = (p - N / 2) * dx;
  }

  // l1 concentration in the central 10% of the window
  const int halfwin = N / 20;
  double total = 0.0, central = 0.0;
  if (dims == 1) {
    for (int p = 0; p < N; ++p) {
      const double m = std::abs(out.values[p]);
      total += m;
      if (std::abs(p - N / 2) <= halfwin) central += m;
    }
  } else {
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) {
        const double m = std::abs(out.values[static_cast<std::size_t>(r) * N + c]);
        total += m;
        if (std::abs(r - N / 2) <= halfwin && std::abs(c - N / 2) <= halfwin)
          central += m;
      }
  }
  out.mass_concentration = total > 0.0 ? central / total : 0.0;
  return out;
}

SliceResult gamma_slice(const SliceSpec& spec, double lambda_p) {
  const auto raw = sample_slice(spec, lambda_p);
  std::vector<std::complex<double>> samples(raw.begin(), raw.end());
  SliceResult out = transform_samples(spec, lambda_p, samples);

  // truncation warning: kernel still large at the grid edge on an off-variety slice
  const int N = spec.points;
  double edge = 0.0;
  if (spec.active_axes.size() == 1) {
    edge = std::max(std::abs(raw.front()), std::abs(raw.back()));
  } else {
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c)
        if (r == 0 || c == 0 || r == N - 1 || c == N - 1)
          edge = std::max(edge, std::abs(raw[static_cast<std::size_t>(r) * N + c]));
  }
  if (edge > 1e-3) {
    MomentumConfig cfg = spec.fixed_values;
    const auto& ax = spec.active_axes[0];
    cfg[ax.momentum_index - 1][ax.component] = spec.k_max;
    try {
      out.nyquist_flag =
          micro::classify_direction(cfg).cls == micro::VarietyClass::Off;
    } catch (const std::invalid_argument&) {
      out.nyquist_flag = false;
    }
  }
  return out;
}

std::vector<LimitRow> commutative_limit_table(double radius, int probes,
                                              const std::vector<double>& lambda_values,
                                              int n, std::uint64_t seed) {
  if (!(radius > 0.0)) throw std::invalid_argument("commutative_limit_table: R > 0");
  if (probes < 10) throw std::invalid_argument("commutative_limit_table: P >= 10");
  if (n < 1) throw std::invalid_argument("commutative_limit_table: n >= 1");

  num::SplitMix64 rng(seed);
  std::vector<MomentumConfig> cfgs(probes);
  for (auto& cfg : cfgs) {
    cfg.resize(n);
    for (auto& k : cfg) {
      do {
        for (int c = 0; c < 4; ++c) k[c] = rng.uniform(-radius, radius);
      } while (norm4(k) > radius);
    }
  }

  std::vector<LimitRow> rows;
  rows.reserve(lambda_values.size());
  for (double lam : lambda_values) {
    LimitRow row;
    row.lambda_p = lam;
    if (lam < 0.0) throw std::invalid_argument("commutative_limit_table: lambda_p >= 0");
    if (lam > 0.0) {
      for (const auto& cfg : cfgs) {
        const auto bp = kernel::beta_pair(cfg, lam);
        row.sup_dev = std::max(row.sup_dev, std::abs(kernel::lambda_closed(cfg, lam) - 1.0));
        row.bound = std::max(row.bound, (bp.beta_plus * bp.beta_plus +
                                         bp.beta_minus * bp.beta_minus) /
                                            12.0);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qst::slicing
