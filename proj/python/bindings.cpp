#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "padicdyn/cli.hpp"
#include "padicdyn/report.hpp"

namespace py = pybind11;
using namespace padicdyn;

namespace {

CanonicalMap make_map(const std::string& a, const std::string& b, const std::string& d, unsigned long p) {
  return CanonicalMap(parse_rational(a), parse_rational(b), parse_rational(d), Prime(p));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr ep) {
    try {
      if (ep) std::rethrow_exception(ep);
    } catch (const DomainError& e) {
      py::object type = py::reinterpret_borrow<py::object>(domain_error.ptr());
      py::object exc = type(e.what());
      exc.attr("kind") = std::string(e.name());
      exc.attr("step") = e.step() ? py::cast(*e.step()) : py::none();
      PyErr_SetObject(domain_error.ptr(), exc.ptr());
    }
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });

  m.def("norm", [](const std::string& x, unsigned long p) {
    return norm(parse_rational(x), Prime(p)).to_string(p);
  });

  m.def("classify", [](const std::string& a, const std::string& b, const std::string& d, unsigned long p) {
    CanonicalMap f = make_map(a, b, d, p);
    Json j{{"map", to_json(f)}, {"classification", to_json(classify(f), f.p())}};
    return j.dump();
  });

  m.def("norm_trace", [](const std::string& a, const std::string& b, const std::string& d, unsigned long p,
                         const std::string& r, std::size_t steps) {
    CanonicalMap f = make_map(a, b, d, p);
    NormCase nc = detect_case(f);
    return to_json(predict_trace(nc, parse_radius(r, p), steps), nc, f.p()).dump();
  });

  m.def("erg2_verdict", [](const std::string& a, const std::string& b, const std::string& d, const std::string& r) {
    CanonicalMap f = make_map(a, b, d, 2);
    return to_json(erg2_verdict(f, parse_radius(r, 2))).dump();
  });

  m.def("not_ergodic_p_odd", [](const std::string& a, const std::string& b, const std::string& d, unsigned long p,
                                const std::string& r) {
    CanonicalMap f = make_map(a, b, d, p);
    return to_json(not_ergodic_p_odd(f, parse_radius(r, p)), f.p()).dump();
  });

  m.def("haar_measure", [](unsigned long p, const std::string& r, const std::string& rho) {
    return format_rational(haar_measure({Prime(p), parse_radius(r, p)}, parse_radius(rho, p)));
  });

  m.def("suite_names", &suite_names);

  m.def("run_suite", [](const std::string& name, std::size_t samples, std::uint64_t seed) {
    SuiteResult r;
    {
      py::gil_scoped_release release;
      r = run_suite(name, {samples, seed});
    }
    return to_json(r).dump();
  }, py::arg("name"), py::arg("samples") = 0, py::arg("seed") = SuiteOptions{}.seed);
}
