#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nagumo/experiments.hpp"

namespace py = pybind11;
using namespace nagumo;

namespace {

RadialField make_field(long long p, int j_min, int j_max, double ball_value, std::vector<double> shells) {
  return RadialField(Prime(p), j_min, j_max, ball_value, std::move(shells));
}

PDTerms make_pd(const std::vector<std::pair<double, double>>& terms) {
  std::vector<PDTerm> out;
  for (const auto& [c, e] : terms) out.push_back({c, e});
  return PDTerms(out);
}

py::dict trajectory_dict(const Trajectory& traj) {
  py::dict d;
  d["times"] = traj.times;
  d["sup_norm"] = traj.sup_norm;
  d["l2_norm"] = traj.l2_norm;
  d["hs_norm"] = traj.hs_norm;
  d["mass"] = traj.mass;
  d["g_value"] = traj.g_value;
  d["error_budget"] = traj.error_budget;
  if (traj.blowup) {
    py::dict b;
    b["t_lo"] = traj.blowup->t_lo;
    b["t_hi"] = traj.blowup->t_hi;
    b["sup_lo"] = traj.blowup->sup_lo;
    b["sup_hi"] = traj.blowup->sup_hi;
    d["blowup"] = b;
  } else {
    d["blowup"] = py::none();
  }
  std::vector<std::vector<double>> frames;
  for (const RadialField& u : traj.snapshots) {
    std::vector<double> row{u.ball_value()};
    for (double v : u.shell_values()) row.push_back(v);
    frames.push_back(std::move(row));
  }
  d["frames"] = frames;
  return d;
}

}  // namespace

PYBIND11_MODULE(_nagumo, m) {
  m.doc() = "Spectral calculus and solvers for p-adic Nagumo-type equations";

  py::class_<Prime>(m, "Prime").def(py::init<long long>()).def_property_readonly("value", &Prime::value);

  py::class_<RadialField>(m, "RadialField")
      .def(py::init(&make_field), py::arg("p"), py::arg("j_min"), py::arg("j_max"), py::arg("ball_value"),
           py::arg("shell_values"))
      .def_property_readonly("j_min", &RadialField::j_min)
      .def_property_readonly("j_max", &RadialField::j_max)
      .def_property_readonly("ball_value", &RadialField::ball_value)
      .def_property_readonly("shell_values", &RadialField::shell_values)
      .def("value_at_shell", &RadialField::value_at_shell)
      .def("fourier", &RadialField::fourier)
      .def("integral", &RadialField::integral)
      .def("norm_l2", &RadialField::norm_l2)
      .def("norm_sup", &RadialField::norm_sup)
      .def("norm_sobolev", &RadialField::norm_sobolev)
      .def("retruncate", [](const RadialField& f, int a, int b) { return f.retruncate(a, b); });

  m.def("ball_indicator", [](long long p, int k) { return RadialField::ball_indicator(Prime(p), k); });
  m.def("gauss_profile", [](long long p, int j_min, int j_max, double amp, double div) {
    const Prime prime(p);
    return RadialField::from_profile(prime, j_min, j_max, [&](int j) {
      return amp * std::exp(-std::pow(static_cast<double>(p), std::abs(j)) / div);
    });
  });
  m.def("linear_combine",
        [](double a, const RadialField& f, double b, const RadialField& g) { return linear_combine(a, f, b, g); });
  m.def("pointwise_product", [](const RadialField& f, const RadialField& g) { return pointwise_product(f, g); });
  m.def("embedding_constant", [](long long p, double s) { return embedding_constant(Prime(p), s); });

  m.def(
      "taibleson_spectral",
      [](const RadialField& f, double alpha, int tail_depth) {
        const OperatorResult r = taibleson_spectral(f, alpha, TailPolicy{tail_depth, 0.0});
        return std::make_pair(r.field, r.error_bound);
      },
      py::arg("f"), py::arg("alpha"), py::arg("tail_depth") = 40);
  m.def(
      "taibleson_kochubei",
      [](const RadialField& f, double alpha, int tail_depth) {
        return taibleson_kochubei(f, alpha, TailPolicy{tail_depth, 0.0});
      },
      py::arg("f"), py::arg("alpha"), py::arg("tail_depth") = 40);
  m.def(
      "semigroup_apply",
      [](const RadialField& f, double t, double gamma, double alpha, double beta, int tail_depth) {
        const OperatorResult r = semigroup_apply(f, t, gamma, alpha, beta, TailPolicy{tail_depth, 0.0});
        return std::make_pair(r.field, r.error_bound);
      },
      py::arg("f"), py::arg("t"), py::arg("gamma"), py::arg("alpha"), py::arg("beta"), py::arg("tail_depth") = 40);
  m.def("smoothing_bound", &smoothing_bound);

  m.def("wavelet_eval", [](long long p, int r, int j, long long num, long long den) {
    return wavelet_eval(Prime(p), WaveletIndex{r, Rational(0), j}, Rational(num, den));
  });
  m.def("blowup_weight_shell_integral", [](long long p, int r, double alpha, int k) {
    return to_double(BlowupWeight(Prime(p), r, alpha).shell_integral(k));
  });
  m.def("pairing_G", [](const RadialField& u, int r, double alpha) {
    return BlowupWeight(u.prime(), r, alpha).pairing(u);
  });
  m.def("positive_pairing", [](const RadialField& u, int r, double alpha) {
    return BlowupWeight(u.prime(), r, alpha).positive_pairing(u);
  });
  m.def("comparison_H", [](double y, double gamma, double alpha, double alpha1, double beta, long long p, int r) {
    return comparison_H(y, ComparisonParams{gamma, alpha, alpha1, beta, p, r});
  });
  m.def("ode_blowup_time",
        [](double g0, double gamma, double alpha, double alpha1, double beta, long long p, int r, double threshold,
           double dt0) { return ode_blowup_time(g0, ComparisonParams{gamma, alpha, alpha1, beta, p, r}, threshold, dt0); });

  m.def(
      "euler_run",
      [](const RadialField& f0, long long p, double gamma, double alpha, double beta, int m,
         const std::vector<std::pair<double, double>>& pd, double s, bool reaction, int j_min, int j_max, double dt,
         double t_end, int save_every, int tail_depth, double blowup_threshold, const std::string& method) {
        ModelParams params{Prime(p), gamma, alpha, beta, m, make_pd(pd), s, reaction};
        SolverConfig cfg;
        cfg.j_min = j_min;
        cfg.j_max = j_max;
        cfg.dt = dt;
        cfg.t_end = t_end;
        cfg.save_every = save_every;
        cfg.tail.tail_depth = tail_depth;
        cfg.blowup_threshold = blowup_threshold;
        cfg.method = method_from_string(method);
        return trajectory_dict(euler_run(f0, params, cfg));
      },
      py::arg("f0"), py::arg("p"), py::arg("gamma"), py::arg("alpha"), py::arg("beta"), py::arg("m"), py::arg("pd"),
      py::arg("s"), py::arg("reaction"), py::arg("j_min"), py::arg("j_max"), py::arg("dt"), py::arg("t_end"),
      py::arg("save_every") = 1, py::arg("tail_depth") = 40, py::arg("blowup_threshold") = 1e6,
      py::arg("method") = "euler-kochubei");

  m.def("lipschitz_L", [](double a, double b, long long p, double gamma, double alpha, double beta, int m,
                          const std::vector<std::pair<double, double>>& pd, double s) {
    return lipschitz_L(a, b, ModelParams{Prime(p), gamma, alpha, beta, m, make_pd(pd), s, true});
  });
  m.def("existence_time", [](double f0_norm, double M, long long p, double gamma, double alpha, double beta, int m,
                             const std::vector<std::pair<double, double>>& pd, double s) {
    const ExistenceEstimate est =
        existence_time(f0_norm, M, ModelParams{Prime(p), gamma, alpha, beta, m, make_pd(pd), s, true});
    py::dict d;
    d["T"] = est.T;
    d["M"] = est.M;
    d["L_at_boundary"] = est.L_at_boundary;
    d["contraction_constant"] = est.contraction_constant;
    d["kernel_q"] = est.kernel_q;
    d["kernel_c"] = est.kernel_c;
    return d;
  });

  m.def("run_simulation", [](const std::string& config_text, const std::string& out_dir) {
    const SimulationOutput out = run_simulation(parse_config(config_text), out_dir);
    return trajectory_dict(out.trajectory);
  });
  m.def("fig1_config", &fig1_config);
}
