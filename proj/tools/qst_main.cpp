#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qst/algebra.hpp"
#include "qst/diagram.hpp"
#include "qst/kernel.hpp"
#include "qst/microlocal.hpp"
#include "qst/momenta_io.hpp"
#include "qst/slice.hpp"

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string class_name(qst::micro::VarietyClass c) {
  switch (c) {
    case qst::micro::VarietyClass::InBoth:
      return "InBoth";
    case qst::micro::VarietyClass::InPlusOnly:
      return "InPlusOnly";
    case qst::micro::VarietyClass::InMinusOnly:
      return "InMinusOnly";
    case qst::micro::VarietyClass::Off:
      return "Off";
  }
  return "?";
}

// single momenta and all-zero configs have no direction class
std::string safe_class(const qst::MomentumConfig& cfg) {
  try {
    return class_name(qst::micro::classify_direction(cfg).cls);
  } catch (const std::invalid_argument&) {
    return "NA";
  }
}

// stdout payload redirected to --out when given
struct Sink {
  std::string path;
  std::ostringstream buf;
  template <typename T>
  Sink& operator<<(const T& v) {
    buf << v;
    return *this;
  }
  int flush() {
    if (path.empty()) {
      std::cout << buf.str();
      return 0;
    }
    std::ofstream f(path);
    if (!f) {
      std::cerr << "cannot open output file: " << path << "\n";
      return 2;
    }
    f << buf.str();
    return 0;
  }
};

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  std::string tok;
  std::istringstream ss(s);
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

struct Common {
  double lambda_p = 1.0;
  int quad_order = 64;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 12345;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--lambda-p", c.lambda_p, "noncommutativity length scale");
  cmd->add_option("--quad-order", c.quad_order, "polar quadrature order");
  cmd->add_option("--format", c.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "write the report to this file instead of stdout");
  cmd->add_option("--seed", c.seed, "seed for probe sampling");
}

int run_kernel(const Common& c, const std::string& file, double tol) {
  auto configs = qst::io::parse_momenta_file(file);
  Sink sink;
  sink.path = c.out;
  bool breach = false;
  nlohmann::json rows = nlohmann::json::array();
  if (c.format == "csv")
    sink << "# beta_plus,beta_minus,lambda_closed,lambda_quad,delta_part,continuous_part,class\n";
  for (const auto& cfg : configs) {
    auto bp = qst::kernel::beta_pair(cfg, c.lambda_p);
    double closed = qst::kernel::lambda_closed(cfg, c.lambda_p);
    auto quad = qst::kernel::make_sphere_quadrature(c.quad_order);
    std::complex<double> lq = qst::kernel::lambda_quadrature(cfg, c.lambda_p, quad);
    auto split = qst::kernel::lambda_split(cfg, c.lambda_p);
    const std::string cls = safe_class(cfg);
    if (std::abs(lq - std::complex<double>(closed, 0.0)) > tol) breach = true;
    if (c.format == "csv") {
      sink << fmt(bp.beta_plus) << "," << fmt(bp.beta_minus) << "," << fmt(closed) << ","
           << fmt(lq.real()) << "," << fmt(split.delta_part) << ","
           << fmt(split.continuous_part) << "," << cls << "\n";
    } else {
      rows.push_back({{"beta_plus", bp.beta_plus},
                      {"beta_minus", bp.beta_minus},
                      {"lambda_closed", closed},
                      {"lambda_quad", lq.real()},
                      {"lambda_quad_imag", lq.imag()},
                      {"delta_part", split.delta_part},
                      {"continuous_part", split.continuous_part},
                      {"class", cls}});
    }
  }
  if (c.format == "json") {
    nlohmann::json j{{"schema", 1}, {"kind", "kernel_report"}, {"rows", rows}};
    sink << j.dump(2) << "\n";
  }
  int rc = sink.flush();
  if (rc) return rc;
  if (breach) {
    std::cerr << "tolerance breach: closed-form and quadrature kernels disagree beyond " << tol
              << "\n";
    return 1;
  }
  return 0;
}

int run_decay(const Common& c, const std::string& file, double t_min, double t_max,
              int samples) {
  auto configs = qst::io::parse_momenta_file(file);
  Sink sink;
  sink.path = c.out;
  nlohmann::json rows = nlohmann::json::array();
  if (c.format == "csv") sink << "# class,asymptote,exponent,residual\n";
  for (const auto& cfg : configs) {
    auto rep = qst::micro::ray_decay(cfg, c.lambda_p, t_min, t_max, samples);
    const std::string cls = safe_class(cfg);
    bool fitted = rep.status == qst::micro::FitStatus::Fitted;
    if (c.format == "csv") {
      sink << cls << "," << fmt(rep.asymptote) << ","
           << (fitted ? fmt(rep.fitted_exponent) : std::string("NA")) << ","
           << (fitted ? fmt(rep.fit_residual) : std::string("NA")) << "\n";
    } else {
      nlohmann::json row{{"class", cls}, {"asymptote", rep.asymptote}};
      if (fitted) {
        row["exponent"] = rep.fitted_exponent;
        row["residual"] = rep.fit_residual;
      } else {
        row["exponent"] = nullptr;
        row["residual"] = nullptr;
      }
      rows.push_back(row);
    }
  }
  if (c.format == "json") {
    nlohmann::json j{{"schema", 1}, {"kind", "decay_report"}, {"rows", rows}};
    sink << j.dump(2) << "\n";
  }
  return sink.flush();
}

int run_slice(const Common& c, const std::string& axes_arg, const std::string& fixed_arg,
              double k_max, int points) {
  qst::slicing::SliceSpec spec;
  spec.k_max = k_max;
  spec.points = points;
  {
    std::istringstream ss(axes_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("axis spec must look like j:mu, got '" + tok + "'");
      qst::slicing::SliceSpec::Axis ax;
      ax.momentum_index = std::stoi(tok.substr(0, colon));
      ax.component = std::stoi(tok.substr(colon + 1));
      spec.active_axes.push_back(ax);
    }
  }
  {
    auto vals = parse_csv_doubles(fixed_arg);
    if (vals.size() % 4 != 0)
      throw std::invalid_argument("fixed momenta need a multiple of 4 components");
    for (size_t i = 0; i < vals.size(); i += 4)
      spec.fixed_values.push_back({vals[i], vals[i + 1], vals[i + 2], vals[i + 3]});
  }
  auto res = qst::slicing::gamma_slice(spec, c.lambda_p);
  Sink sink;
  sink.path = c.out;
  bool two_d = spec.active_axes.size() == 2;
  if (c.format == "csv") {
    sink << "# lambda_p=" << fmt(res.lambda_p) << " k_max=" << fmt(k_max)
         << " points=" << points << " mass_concentration=" << fmt(res.mass_concentration)
         << " nyquist_suspect=" << (res.nyquist_flag ? 1 : 0) << "\n";
    if (!two_d) {
      sink << "# x,re,im\n";
      for (int p = 0; p < points; ++p)
        sink << fmt(res.positions[0][p]) << "," << fmt(res.values[p].real()) << ","
             << fmt(res.values[p].imag()) << "\n";
    } else {
      sink << "# x,y,re,im\n";
      for (int p = 0; p < points; ++p)
        for (int q = 0; q < points; ++q) {
          const auto& v = res.values[static_cast<size_t>(p) * points + q];
          sink << fmt(res.positions[0][p]) << "," << fmt(res.positions[1][q]) << ","
               << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
        }
    }
  } else {
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& v : res.values) vals.push_back({v.real(), v.imag()});
    nlohmann::json j{{"schema", 1},
                     {"kind", "slice"},
                     {"lambda_p", res.lambda_p},
                     {"k_max", k_max},
                     {"points", points},
                     {"dimensions", two_d ? 2 : 1},
                     {"positions", res.positions},
                     {"values", vals},
                     {"mass_concentration", res.mass_concentration},
                     {"nyquist_suspect", res.nyquist_flag}};
    sink << j.dump(2) << "\n";
  }
  return sink.flush();
}

int run_expand(const Common& c, int order, int arity, const std::string& render) {
  auto sum = qst::diag::feynman_terms(order, arity);
  auto summary = qst::diag::summarize(sum, order, arity);
  Sink sink;
  sink.path = c.out;
  if (render == "text")
    sink << qst::diag::to_text(sum);
  else
    sink << qst::diag::to_canonical_json(sum) << "\n";
  std::cerr << "terms=" << summary.term_count << " topologies=" << summary.topology_count
            << " hbar_histogram={";
  bool first = true;
  for (auto [h, n] : summary.hbar_histogram) {
    if (!first) std::cerr << ",";
    std::cerr << h << ":" << n;
    first = false;
  }
  std::cerr << "}\n";
  return sink.flush();
}

int run_limits(const Common& c, const std::string& lambdas_arg, double radius, int probes,
               int n) {
  auto lambdas = parse_csv_doubles(lambdas_arg);
  auto rows = qst::slicing::commutative_limit_table(radius, probes, lambdas, n, c.seed);
  Sink sink;
  sink.path = c.out;
  if (c.format == "csv") {
    sink << "# lambda_p,sup_dev,bound\n";
    for (const auto& r : rows)
      sink << fmt(r.lambda_p) << "," << fmt(r.sup_dev) << "," << fmt(r.bound) << "\n";
  } else {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& r : rows)
      jr.push_back({{"lambda_p", r.lambda_p}, {"sup_dev", r.sup_dev}, {"bound", r.bound}});
    nlohmann::json j{{"schema", 1}, {"kind", "limit_table"}, {"rows", jr}};
    sink << j.dump(2) << "\n";
  }
  return sink.flush();
}

int run_stur(const Common& c, const std::string& deltas_arg, const std::string& x_arg) {
  std::array<double, 4> deltas{};
  if (!deltas_arg.empty()) {
    auto v = parse_csv_doubles(deltas_arg);
    if (v.size() != 4) throw std::invalid_argument("--deltas needs exactly 4 values");
    std::copy(v.begin(), v.end(), deltas.begin());
  } else {
    // uncertainties of the optimal localization state, via finite differences
    qst::Four x{0.0, 0.0, 0.0, 0.0};
    if (!x_arg.empty()) {
      auto v = parse_csv_doubles(x_arg);
      if (v.size() != 4) throw std::invalid_argument("--x needs exactly 4 values");
      std::copy(v.begin(), v.end(), x.begin());
    }
    qst::algebra::StateFunctional s = qst::algebra::optimal_state(x, c.lambda_p);
    for (int mu = 0; mu < 4; ++mu) {
      auto m = qst::algebra::state_moments(s, mu, 1e-3);
      deltas[mu] = std::sqrt(m.variance);
    }
  }
  auto chk = qst::algebra::check_stur(deltas, c.lambda_p);
  Sink sink;
  sink.path = c.out;
  double lhs1 = deltas[0] * (deltas[1] + deltas[2] + deltas[3]);
  double lhs2 = deltas[1] * deltas[2] + deltas[1] * deltas[3] + deltas[2] * deltas[3];
  double rhs = 0.5 * c.lambda_p * c.lambda_p;
  if (c.format == "csv") {
    sink << "# delta0,delta1,delta2,delta3,time_space_lhs,space_space_lhs,threshold,"
            "time_space_ok,space_space_ok\n";
    sink << fmt(deltas[0]) << "," << fmt(deltas[1]) << "," << fmt(deltas[2]) << ","
         << fmt(deltas[3]) << "," << fmt(lhs1) << "," << fmt(lhs2) << "," << fmt(rhs) << ","
         << (chk.first ? 1 : 0) << "," << (chk.second ? 1 : 0) << "\n";
  } else {
    nlohmann::json j{{"schema", 1},
                     {"kind", "stur_report"},
                     {"deltas", deltas},
                     {"time_space_lhs", lhs1},
                     {"space_space_lhs", lhs2},
                     {"threshold", rhs},
                     {"time_space_ok", chk.first},
                     {"space_space_ok", chk.second}};
    sink << j.dump(2) << "\n";
  }
  int rc = sink.flush();
  if (rc) return rc;
  if (!chk.first || !chk.second) {
    std::cerr << "uncertainty relations violated\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical and symbolic toolkit for a non-local scalar QFT on quantum spacetime"};
  app.require_subcommand(1);

  Common common;

  auto* kernel = app.add_subcommand("kernel", "evaluate the n-point kernel on momenta configs");
  std::string kernel_file;
  double kernel_tol = 1e-8;
  kernel->add_option("momenta", kernel_file, "momenta file, one config per line")->required();
  kernel->add_option("--tol", kernel_tol, "closed-vs-quadrature tolerance");
  add_common(kernel, common);

  auto* decay = app.add_subcommand("decay", "fit kernel decay along rays");
  std::string decay_file;
  double t_min = 10.0, t_max = 1000.0;
  int samples = 257;
  decay->add_option("rays", decay_file, "ray file, one config per line")->required();
  decay->add_option("--t-min", t_min, "smallest ray parameter");
  decay->add_option("--t-max", t_max, "largest ray parameter");
  decay->add_option("--samples", samples, "number of log-spaced samples");
  add_common(decay, common);

  auto* slice = app.add_subcommand("slice", "inverse-transform a kernel slice to position space");
  std::string axes_arg = "1:1";
  std::string fixed_arg = "1,0,0,0";
  double k_max = 256.0;
  int points = 1024;
  slice->add_option("--axes", axes_arg, "active axes as j:mu[,j:mu] (j 1-based, mu 0..3)");
  slice->add_option("--fixed", fixed_arg, "fixed momenta, 4 components per surviving factor");
  slice->add_option("--kmax", k_max, "momentum cutoff");
  slice->add_option("--points", points, "grid points per axis (power of two)");
  add_common(slice, common);

  auto* expand = app.add_subcommand("expand", "expand retarded diagram terms");
  int order = 1, arity = 4;
  std::string render = "json";
  expand->add_option("--order", order, "perturbative order k");
  expand->add_option("--arity", arity, "vertex arity n");
  expand->add_option("--render", render, "render as json or text")
      ->check(CLI::IsMember({"json", "text"}));
  add_common(expand, common);

  auto* limits = app.add_subcommand("limits", "commutative-limit deviation table");
  std::string lambdas_arg = "1,0.5,0.25,0.125";
  double radius = 1.0;
  int probes = 64, limit_n = 2;
  limits->add_option("--lambdas", lambdas_arg, "comma-separated length scales");
  limits->add_option("--radius", radius, "momentum ball radius");
  limits->add_option("--probes", probes, "number of probe configurations");
  limits->add_option("--n", limit_n, "momenta per configuration");
  add_common(limits, common);

  auto* stur = app.add_subcommand("stur", "check the uncertainty relations");
  std::string deltas_arg, x_arg;
  stur->add_option("--deltas", deltas_arg, "four uncertainties d0,d1,d2,d3");
  stur->add_option("--x", x_arg, "localization centre for the optimal state");
  add_common(stur, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (kernel->parsed()) return run_kernel(common, kernel_file, kernel_tol);
    if (decay->parsed()) return run_decay(common, decay_file, t_min, t_max, samples);
    if (slice->parsed()) return run_slice(common, axes_arg, fixed_arg, k_max, points);
    if (expand->parsed()) return run_expand(common, order, arity, render);
    if (limits->parsed()) return run_limits(common, lambdas_arg, radius, probes, limit_n);
    if (stur->parsed()) return run_stur(common, deltas_arg, x_arg);
  } catch (const qst::io::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
