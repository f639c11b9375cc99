// Python bindings. Scenarios cross the boundary as JSON text, samples as
// numpy arrays.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "fluxlag/errors.hpp"
#include "fluxlag/experiments.hpp"
#include "fluxlag/reference.hpp"

namespace py = pybind11;
using namespace fluxlag;

namespace {

py::array_t<double> array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::object optional_number(const std::optional<double>& v) { return v ? py::cast(*v) : py::none(); }

py::dict sample_dict(const DensitySample& s) {
  py::dict d;
  d["t"] = s.t;
  d["eta"] = array(s.eta);
  d["x"] = array(s.x);
  d["u"] = array(s.u);
  d["psi_eta"] = array(s.psi_eta);
  d["support"] = py::make_tuple(s.support_left, s.support_right);
  d["u_max"] = s.u_max;
  d["argmax"] = s.argmax;
  return d;
}

py::dict metrics_dict(const MetricsRecord& r) {
  py::dict d;
  d["t"] = r.t;
  d["l1_paper"] = optional_number(r.l1_paper);
  d["l1_quadrature"] = optional_number(r.l1_quadrature);
  d["support_left"] = r.support_left;
  d["support_right"] = r.support_right;
  d["u_max"] = r.u_max;
  d["max_interior_abs_psi_eta"] = r.max_interior_abs_psi_eta;
  d["liftoff_left"] = r.liftoff_left;
  d["liftoff_right"] = r.liftoff_right;
  d["w_max"] = r.w_max;
  return d;
}

py::dict result_dict(const ScenarioResult& r) {
  py::list snaps, metrics;
  for (const auto& s : r.trajectory.snapshots) snaps.append(sample_dict(reconstruct(s)));
  for (const auto& m : r.metrics) metrics.append(metrics_dict(m));
  py::dict d;
  d["termination"] = to_string(r.trajectory.termination);
  d["message"] = r.trajectory.message;
  d["steps"] = r.trajectory.steps;
  d["wall_seconds"] = r.wall_seconds;
  d["snapshots"] = snaps;
  d["metrics"] = metrics;
  return d;
}

template <class F>
py::array_t<double> vectorize(py::array_t<double, py::array::c_style | py::array::forcecast> x, F f) {
  py::array_t<double> out(x.request().shape);
  const double* in = x.data();
  double* o = out.mutable_data();
  for (py::ssize_t i = 0; i < x.size(); ++i) o[i] = f(in[i]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_fluxlag, m) {
  m.doc() = "Lagrangian particle solver for flux-limited diffusion";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def("version", [] { return std::string(version()); });
  m.def("figure_ids", &figure_ids);
  m.def(
      "figure_preset",
      [](const std::string& id, std::optional<std::size_t> n) {
        const FigurePreset p = figure_preset(id, n);
        std::vector<std::string> runs;
        for (const auto& s : p.runs) runs.push_back(to_json(s).dump());
        return py::make_tuple(runs, p.notes);
      },
      py::arg("id"), py::arg("n") = py::none(), "(list of scenario JSON documents, notes)");

  m.def("canonical_config", [](const std::string& doc) { return to_json(load_config(doc)).dump(); },
        "Validate a scenario document and return it with every default filled in.");
  m.def(
      "initial_sample",
      [](const std::string& doc) {
        const Scenario s = load_config(doc);
        auto mesh = std::make_shared<const MassMesh>(s.mesh.build());
        return sample_dict(reconstruct(init_pseudo_inverse(s.initial.build(), mesh)));
      },
      "Reconstructed sample of the initial datum on the scenario mesh.");
  m.def(
      "simulate",
      [](const std::string& doc, std::size_t max_steps) {
        const Scenario s = load_config(doc);
        RunOptions opts;
        opts.max_steps = max_steps;
        ScenarioResult r;
        {
          py::gil_scoped_release release;
          r = simulate(s, opts);
        }
        return result_dict(r);
      },
      py::arg("config"), py::arg("max_steps") = 0);
  m.def(
      "run_scenario",
      [](const std::string& doc, const std::string& dir, const std::string& notes) {
        const Scenario s = load_config(doc);
        ScenarioResult r;
        {
          py::gil_scoped_release release;
          r = run_scenario(s, dir, {}, notes);
        }
        py::dict d;
        d["termination"] = to_string(r.trajectory.termination);
        d["message"] = r.trajectory.message;
        d["steps"] = r.trajectory.steps;
        d["snapshots"] = r.trajectory.snapshots.size();
        return d;
      },
      py::arg("config"), py::arg("out_dir"), py::arg("notes") = "");
  m.def(
      "rate_study",
      [](double mm, std::size_t n, double t_end, double a, double b) {
        RateStudy study;
        {
          py::gil_scoped_release release;
          study = rate_study(mm, n, t_end, {a, b});
        }
        py::dict d;
        d["slope"] = study.fit.slope;
        d["points"] = study.fit.points;
        d["series"] = study.series;
        d["termination"] = to_string(study.termination);
        return d;
      },
      py::arg("m"), py::arg("n"), py::arg("t_end"), py::arg("a"), py::arg("b"));

  m.def("u_hom", [](py::array_t<double> x, double t) { return vectorize(x, [t](double v) { return u_hom(v, t); }); });
  m.def("selfsim_heat",
        [](py::array_t<double> x, double t) { return vectorize(x, [t](double v) { return selfsim_heat(v, t); }); });
  m.def("barenblatt", [](py::array_t<double> x, double t, double mm) {
    return vectorize(x, [t, mm](double v) { return barenblatt(v, t, mm); });
  });
  m.def("barenblatt_constant", &barenblatt_constant);
  m.def("barenblatt_radius", &barenblatt_radius);
}
