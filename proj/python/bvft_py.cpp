#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>

#include "bvft/experiment.hpp"
#include "bvft/specfun.hpp"
#include "bvft/testfns.hpp"
#include "bvft/transforms.hpp"
#include "bvft/verify.hpp"

namespace py = pybind11;
using namespace bvft;

namespace {

py::dict as_dict(const QuadratureResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["abs_error_estimate"] = r.abs_error_estimate;
  d["status"] = std::string(to_string(r.status));
  d["evaluations"] = r.evaluations;
  return d;
}

TestFunction family(const std::string& id, double lambda) {
  return registry_get(id, {{"lambda", lambda}});
}

}  // namespace

PYBIND11_MODULE(_bvft, m) {
  m.doc() = "Fourier transforms of bounded variation functions on the half-line";

  py::register_exception<RegistryError>(m, "RegistryError", PyExc_KeyError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DegenerateInput>(m, "DegenerateInput", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("si", &specfun::si, py::arg("u"));
  m.def("ci", &specfun::ci, py::arg("u"));

  m.def("families", &family_ids);
  m.def("odd_functions", &odd_function_ids);
  m.def("family_description", [](const std::string& id) { return family_description(id); });

  m.def("evaluate",
        [](const std::string& id, double t, double lambda) {
          const TestFunction f = family(id, lambda);
          return py::make_tuple(f.eval_f(t), f.eval_fprime(t));
        },
        py::arg("family"), py::arg("t"), py::arg("lam") = 1.0,
        "(f(t), f'(t)) for a registered family.");

  m.def("fourier_cosine",
        [](const std::string& id, double x, double lambda) {
          return as_dict(fourier_cosine(family(id, lambda), x));
        },
        py::arg("family"), py::arg("x"), py::arg("lam") = 1.0);
  m.def("fourier_sine",
        [](const std::string& id, double x, double lambda) {
          return as_dict(fourier_sine(family(id, lambda), x));
        },
        py::arg("family"), py::arg("x"), py::arg("lam") = 1.0);

  m.def("t_transform",
        [](const std::string& odd_id, double t) {
          return as_dict(t_transform(odd_function(odd_id), t));
        },
        py::arg("odd_function"), py::arg("t"));
  m.def("hilbert_odd",
        [](const std::string& odd_id, double x) {
          return as_dict(hilbert_odd(odd_function(odd_id), x));
        },
        py::arg("odd_function"), py::arg("x"));
  m.def("script_t",
        [](const std::string& odd_id, double x) {
          return as_dict(script_t(odd_function(odd_id), x));
        },
        py::arg("odd_function"), py::arg("x"));
  m.def("h0_script_t",
        [](const std::string& odd_id, double x, bool direct) {
          const HalfLineFunction g = odd_function(odd_id);
          return as_dict(direct ? h0_script_t_direct(g, x) : h0_script_t_cisi(g, x));
        },
        py::arg("odd_function"), py::arg("x"), py::arg("direct") = false);

  m.def("fubini_residual",
        [](const std::string& id, double lambda) {
          return check_fubini(family(id, lambda)).relative_residual;
        },
        py::arg("family"), py::arg("lam") = 1.0);

  m.def("membership",
        [](const std::string& odd_id) {
          const MembershipVerdict v = classify_membership(odd_function(odd_id));
          py::dict d;
          d["in_L10"] = std::string(to_string(v.in_L10));
          d["in_Q0"] = std::string(to_string(v.in_Q0));
          d["in_H1Q"] = std::string(to_string(v.in_H1Q));
          d["in_H10"] = std::string(to_string(v.in_H10));
          d["monotone"] = v.monotone();
          return d;
        },
        py::arg("odd_function"));

  m.def("run",
        [](const std::filesystem::path& config, int threads) {
          const RunOutcome out = run_experiment(load_config(config), threads);
          return out.summary;
        },
        py::arg("config"), py::arg("threads") = 1,
        "Runs a JSON experiment config; returns the summary CSV path.");
}
