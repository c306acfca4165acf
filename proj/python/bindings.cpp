// Python module _core: thin wrappers over the C++ toolkit.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "soliton/core.hpp"
#include "soliton/darboux.hpp"
#include "soliton/measures.hpp"
#include "soliton/numerics.hpp"
#include "soliton/states.hpp"
#include "soliton/verify.hpp"
#include "soliton/wronskian.hpp"

namespace py = pybind11;
using namespace soliton;

namespace {

SolitonParams make_params(std::vector<double> a, std::optional<std::vector<double>> b) {
  std::vector<double> shifts = b ? *b : std::vector<double>(a.size(), 0.0);
  const std::size_t n = a.size();
  return validate_params(n, std::move(a), std::move(shifts));
}

states::SynthesisWeight weight_of(const std::string& family) {
  if (family == "zeta") return states::SynthesisWeight::Unit;
  if (family == "phi") return states::SynthesisWeight::Norm;
  if (family == "eta") return states::SynthesisWeight::InverseNorm;
  throw Error(ErrorCode::InvalidArgument, "family must be zeta, phi or eta");
}

template <class F>
std::vector<double> map_grid(const std::vector<double>& xs, F f) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(f(x));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "N-soliton potentials, Darboux chains and coherent states";

  static py::exception<Error> error(m, "SolitonError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      PyErr_SetObject(exc.ptr(), py::make_tuple(e.what(), std::string(error_name(e.code()))).ptr());
    }
  });

  py::class_<SolitonParams>(m, "Params")
      .def(py::init(&make_params), py::arg("a"), py::arg("b") = py::none())
      .def_property_readonly("n", &SolitonParams::n)
      .def_property_readonly("a", &SolitonParams::a)
      .def_property_readonly("b", &SolitonParams::b)
      .def("__repr__", [](const SolitonParams& p) { return "Params(" + describe(p) + ")"; });

  m.def("potential", [](const SolitonParams& p, const std::vector<double>& xs) {
    const auto e = wronskian::build_cosh_expansion(p);
    return map_grid(xs, [&](double x) { return wronskian::potential(e, x); });
  }, py::arg("params"), py::arg("x"), "V1 sampled at each x");

  m.def("log_wronskian", [](const SolitonParams& p, double x) {
    return wronskian::eval_wronskian(wronskian::build_cosh_expansion(p), x).log_value;
  }, py::arg("params"), py::arg("x"));

  m.def("wronskian_determinant", [](const SolitonParams& p, double x) {
    return wronskian::wronskian_determinant_oracle(p, x).real();
  }, py::arg("params"), py::arg("x"));

  m.def("bound_state", [](const SolitonParams& p, std::size_t k, const std::vector<double>& xs) {
    return map_grid(xs, [&](double x) { return states::bound_state(p, k, x); });
  }, py::arg("params"), py::arg("k"), py::arg("x"), "k is 1-based");

  m.def("continuum_state", [](const SolitonParams& p, double k, double x, double t) {
    return states::continuum_state(p, k, x, t);
  }, py::arg("params"), py::arg("p"), py::arg("x"), py::arg("t") = 0.0);

  m.def("continuum_norm", &darboux::continuum_norm, py::arg("params"), py::arg("p"));
  m.def("transmission_coefficient", &darboux::transmission_coefficient, py::arg("params"), py::arg("p"));

  m.def("free_cs", [](Complex z, double x, double t) { return states::free_cs(ComplexLabel(z), x, t); },
        py::arg("z"), py::arg("x"), py::arg("t") = 0.0);
  m.def("cs_phi", [](const SolitonParams& p, Complex z, double x, double t) {
    return states::cs_phi(darboux::build_chain(p), ComplexLabel(z), x, t);
  }, py::arg("params"), py::arg("z"), py::arg("x"), py::arg("t") = 0.0);
  m.def("cs_eta_one_soliton", [](double a, Complex z, double x, double t) {
    return states::cs_eta_one_soliton(a, ComplexLabel(z), x, t);
  }, py::arg("a"), py::arg("z"), py::arg("x"), py::arg("t") = 0.0);
  m.def("synth_state", [](const SolitonParams& p, const std::string& family, Complex z, double x,
                          double t) {
    return states::synth_state(darboux::build_chain(p), weight_of(family), ComplexLabel(z), x, t);
  }, py::arg("params"), py::arg("family"), py::arg("z"), py::arg("x"), py::arg("t") = 0.0);

  m.def("norm_eta", [](const SolitonParams& p, Complex z) { return states::norm_eta(p, ComplexLabel(z)); },
        py::arg("params"), py::arg("z"));
  m.def("norm_phi", [](const SolitonParams& p, Complex z) { return states::norm_phi(p, ComplexLabel(z)); },
        py::arg("params"), py::arg("z"));

  m.def("overlap_s0", [](double a, int n_max) { return states::overlap_s0(a, n_max).entries; },
        py::arg("a"), py::arg("n_max"));
  m.def("overlap_s", [](const SolitonParams& p, int n_max) { return states::overlap_s(p, n_max).entries; },
        py::arg("params"), py::arg("n_max"));
  m.def("overlap_s_inverse", [](const SolitonParams& p, int n_max) {
    return states::overlap_s_inverse(p, n_max).entries;
  }, py::arg("params"), py::arg("n_max"));

  m.def("eta_measure", [](const SolitonParams& p) { return measures::eta_measure(p).coefficients; },
        py::arg("params"), "ascending coefficients of omega_eta(x)");
  m.def("partial_fractions", [](const SolitonParams& p) { return measures::partial_fractions(p).residues; },
        py::arg("params"));

  m.def("scatter", [](const SolitonParams& p, double k) {
    const auto r = numerics::scatter(p, k);
    return py::make_tuple(r.reflection, r.transmission);
  }, py::arg("params"), py::arg("p"), "(R, T) from the ODE oracle");

  m.def("complex_erfc", &numerics::complex_erfc, py::arg("w"));

  m.def("verify", [](const SolitonParams& p, const std::string& suite, std::uint64_t seed) {
    const auto which = verify::parse_suite(suite);
    std::vector<VerificationReport> reports;
    {
      py::gil_scoped_release unlocked;
      reports = verify::run_suite(which, p, {seed, {}, false});
    }
    py::list out;
    for (const auto& r : reports) {
      py::dict d;
      d["check_name"] = r.check_name;
      d["params_echo"] = r.params_echo;
      d["observed"] = r.observed;
      d["expected"] = r.expected;
      d["tolerance"] = r.tolerance;
      d["passed"] = r.passed;
      out.append(d);
    }
    return out;
  }, py::arg("params"), py::arg("suite") = "all", py::arg("seed") = 0);
}
