#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qst/algebra.hpp"
#include "qst/diagram.hpp"
#include "qst/kernel.hpp"
#include "qst/microlocal.hpp"
#include "qst/slice.hpp"

namespace py = pybind11;

namespace {

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

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "core operations of the quantum-spacetime field toolkit";

  m.def(
      "beta_pair",
      [](const qst::MomentumConfig& cfg, double lambda_p) {
        auto bp = qst::kernel::beta_pair(cfg, lambda_p);
        return py::make_tuple(bp.beta_plus, bp.beta_minus, bp.v_plus, bp.v_minus);
      },
      py::arg("config"), py::arg("lambda_p") = 1.0,
      "(beta_plus, beta_minus, v_plus, v_minus) for a momentum configuration");

  m.def("lambda_closed", &qst::kernel::lambda_closed, py::arg("config"),
        py::arg("lambda_p") = 1.0, "closed-form n-point kernel value");

  m.def(
      "lambda_quadrature",
      [](const qst::MomentumConfig& cfg, double lambda_p, int order) {
        auto quad = qst::kernel::make_sphere_quadrature(order);
        return qst::kernel::lambda_quadrature(cfg, lambda_p, quad);
      },
      py::arg("config"), py::arg("lambda_p") = 1.0, py::arg("order") = 64,
      "sphere-quadrature kernel value (independent oracle)");

  m.def(
      "lambda_split",
      [](const qst::MomentumConfig& cfg, double lambda_p) {
        auto s = qst::kernel::lambda_split(cfg, lambda_p);
        return py::make_tuple(s.total, s.delta_part, s.continuous_part);
      },
      py::arg("config"), py::arg("lambda_p") = 1.0,
      "(total, delta_part, continuous_part) kernel split");

  m.def(
      "twist_phase",
      [](const qst::Four& k1, const qst::Four& k2, const qst::Three& e, int sign,
         double lambda_p) {
        return qst::algebra::twist_phase(k1, k2, {e, sign}, lambda_p);
      },
      py::arg("k1"), py::arg("k2"), py::arg("e"), py::arg("sign") = 1,
      py::arg("lambda_p") = 1.0, "unimodular product twist of two exponentials");

  m.def(
      "weyl_product",
      [](const qst::Four& k1, std::complex<double> ph1, const qst::Four& k2,
         std::complex<double> ph2, const qst::Three& e, int sign, double lambda_p) {
        auto w = qst::algebra::weyl_product({k1, ph1}, {k2, ph2}, {e, sign}, lambda_p);
        return py::make_tuple(w.momentum, w.phase);
      },
      py::arg("k1"), py::arg("phase1"), py::arg("k2"), py::arg("phase2"), py::arg("e"),
      py::arg("sign") = 1, py::arg("lambda_p") = 1.0,
      "(momentum, phase) of the product of two Weyl elements");

  m.def("optimal_state_eval", &qst::algebra::optimal_state_eval, py::arg("k"), py::arg("x"),
        py::arg("lambda_p") = 1.0, "best-localized state value on a Weyl generator");

  m.def(
      "state_moments",
      [](const qst::Four& x, double lambda_p, int mu, double step) {
        auto s = qst::algebra::optimal_state(x, lambda_p);
        auto mo = qst::algebra::state_moments(s, mu, step);
        return py::make_tuple(mo.mean, mo.variance);
      },
      py::arg("x"), py::arg("lambda_p") = 1.0, py::arg("mu") = 0, py::arg("step") = 1e-3,
      "(mean, variance) of q^mu in the optimal state, by finite differences");

  m.def(
      "check_stur",
      [](const std::array<double, 4>& deltas, double lambda_p) {
        auto c = qst::algebra::check_stur(deltas, lambda_p);
        return py::make_tuple(c.first, c.second);
      },
      py::arg("deltas"), py::arg("lambda_p") = 1.0,
      "(time-space ok, space-space ok) uncertainty-relation checks");

  m.def(
      "classify_direction",
      [](const qst::MomentumConfig& cfg, double tol) {
        auto d = qst::micro::classify_direction(cfg, tol);
        return py::make_tuple(class_name(d.cls), d.residual_plus, d.residual_minus);
      },
      py::arg("config"), py::arg("tol") = 1e-9,
      "(class, residual_plus, residual_minus) variety membership");

  m.def(
      "ray_decay",
      [](const qst::MomentumConfig& cfg, double lambda_p, double t_min, double t_max,
         int samples) {
        auto r = qst::micro::ray_decay(cfg, lambda_p, t_min, t_max, samples);
        auto cls = qst::micro::classify_direction(cfg);
        py::dict d;
        d["class"] = class_name(cls.cls);
        d["asymptote"] = r.asymptote;
        d["exponent"] = r.fitted_exponent;
        d["residual"] = r.fit_residual;
        d["fitted"] = r.status == qst::micro::FitStatus::Fitted;
        d["samples"] = r.samples;
        return d;
      },
      py::arg("config"), py::arg("lambda_p") = 1.0, py::arg("t_min") = 10.0,
      py::arg("t_max") = 1000.0, py::arg("samples") = 257,
      "tail-decay fit of the kernel along a ray");

  m.def("wf_candidate", &qst::micro::wf_candidate, py::arg("x_config"), py::arg("k_config"),
        py::arg("lambda_samples"), py::arg("tol") = 1e-9,
        "singular-support candidate containment test");

  m.def(
      "gamma_slice",
      [](const std::vector<std::pair<int, int>>& axes, const qst::MomentumConfig& fixed,
         double k_max, int points, double lambda_p) {
        qst::slicing::SliceSpec spec;
        for (auto [j, mu] : axes) spec.active_axes.push_back({j, mu});
        spec.fixed_values = fixed;
        spec.k_max = k_max;
        spec.points = points;
        auto r = qst::slicing::gamma_slice(spec, lambda_p);
        py::dict d;
        d["positions"] = r.positions;
        d["values"] = r.values;
        d["mass_concentration"] = r.mass_concentration;
        d["nyquist_suspect"] = r.nyquist_flag;
        return d;
      },
      py::arg("axes"), py::arg("fixed"), py::arg("k_max") = 10.0, py::arg("points") = 256,
      py::arg("lambda_p") = 1.0, "position-space slice of the non-local kernel");

  m.def(
      "commutative_limit_table",
      [](double radius, int probes, const std::vector<double>& lambdas, int n,
         std::uint64_t seed) {
        auto rows = qst::slicing::commutative_limit_table(radius, probes, lambdas, n, seed);
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& r : rows) out.emplace_back(r.lambda_p, r.sup_dev, r.bound);
        return out;
      },
      py::arg("radius") = 1.0, py::arg("probes") = 64,
      py::arg("lambdas") = std::vector<double>{1.0, 0.5, 0.25, 0.125}, py::arg("n") = 2,
      py::arg("seed") = 12345, "per-lambda (sup deviation, analytic bound) rows");

  m.def(
      "feynman_terms_json",
      [](int k, int n) { return qst::diag::to_canonical_json(qst::diag::feynman_terms(k, n)); },
      py::arg("k"), py::arg("n") = 4, "canonical JSON of the diagram-rule expansion");

  m.def(
      "r_product_json",
      [](int k, int n, const std::string& route) {
        qst::diag::EffectiveInteraction v;
        v.n = n;
        auto rr = qst::diag::r_product(k, v,
                                       route == "general" ? qst::diag::RRoute::GeneralFormula
                                                          : qst::diag::RRoute::ClosedDisplay);
        return py::make_tuple(qst::diag::to_canonical_json(rr.sum), rr.checked);
      },
      py::arg("k"), py::arg("n") = 4, py::arg("route") = "closed",
      "(canonical JSON, checked) of the retarded-product expansion");

  m.def(
      "expand_summary",
      [](int k, int n) {
        auto sum = qst::diag::feynman_terms(k, n);
        auto s = qst::diag::summarize(sum, k, n);
        return py::make_tuple(s.term_count, s.topology_count, s.hbar_histogram);
      },
      py::arg("k"), py::arg("n") = 4, "(term count, topology count, hbar histogram)");

  m.def(
      "effective_integrand",
      [](int n, const std::vector<std::array<int, 4>>& derivs,
         const std::function<std::complex<double>(const qst::Four&)>& ghat,
         const qst::MomentumConfig& cfg, double lambda_p) {
        qst::diag::EffectiveInteraction v;
        v.n = n;
        v.derivs = derivs;
        return v.integrand(ghat, cfg, lambda_p);
      },
      py::arg("n"), py::arg("derivs"), py::arg("ghat"), py::arg("config"),
      py::arg("lambda_p") = 1.0, "momentum-space integrand of the effective vertex");
}
