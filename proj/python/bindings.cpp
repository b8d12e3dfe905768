#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "antisym/errors.hpp"
#include "antisym/fields.hpp"
#include "antisym/fraclap.hpp"
#include "antisym/harnack.hpp"
#include "antisym/io.hpp"
#include "antisym/norms.hpp"
#include "antisym/poisson.hpp"
#include "antisym/special.hpp"
#include "antisym/validation.hpp"

namespace py = pybind11;
using namespace antisym;

namespace {

Point to_point(const std::vector<double>& x) {
  if (x.empty() || x.size() > static_cast<std::size_t>(kMaxDim)) throw UsageError("point must have 1..3 coordinates");
  Point p(static_cast<int>(x.size()));
  for (std::size_t k = 0; k < x.size(); ++k) p[static_cast<int>(k)] = x[k];
  return p;
}

FieldSpec field_of(const std::string& text) { return field_from_json(nlohmann::json::parse(text)); }

quad::QuadSpec quad_of(const std::string& text, int n) {
  return quad_from_json(text.empty() ? nlohmann::json(nullptr) : nlohmann::json::parse(text), n);
}

}  // namespace

PYBIND11_MODULE(_antisym, m) {
  m.doc() = "antisymmetric fractional Laplacian: core operations";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<NumericalRejection>(m, "NumericalRejection", PyExc_RuntimeError);

  py::class_<Params>(m, "Params")
      .def(py::init<int, double>(), py::arg("n"), py::arg("s"))
      .def_readonly("n", &Params::n)
      .def_readonly("s", &Params::s)
      .def("__repr__", [](const Params& p) { return "Params(n=" + std::to_string(p.n) + ", s=" + format_double(p.s) + ")"; });

  m.def("c_ns", [](const Params& p) { return special::c_ns(p); });
  m.def("gamma_ns", [](const Params& p) { return special::gamma_ns(p); });
  m.def("tilde_c_ns", [](const Params& p) { return special::tilde_c_ns(p); });
  m.def("halfspace_integral_closed", [](const Params& p) { return special::halfspace_integral_closed(p); });

  m.def(
      "evaluate", [](const std::string& field, const std::vector<double>& x) { return evaluate(field_of(field), to_point(x)); },
      py::arg("field"), py::arg("x"));
  m.def(
      "anorm", [](const std::string& field, const Params& p, const std::string& q) { return anorm(field_of(field), p, quad_of(q, p.n)); },
      py::arg("field"), py::arg("params"), py::arg("quad") = "");
  m.def(
      "fraclap",
      [](const std::string& field, const std::vector<double>& x, const Params& p, const std::string& q) {
        const FieldSpec f = field_of(field);
        const Point y = to_point(x);
        const FraclapResult r = f.meta().antisymmetric && y[0] > 0.0 ? antisym_fraclap_eval(f, y, p, quad_of(q, p.n))
                                                                      : classical_fraclap_eval(f, y, p, quad_of(q, p.n));
        return py::dict(py::arg("value") = r.value, py::arg("error_bound") = r.error_bound, py::arg("route") = r.route);
      },
      py::arg("field"), py::arg("x"), py::arg("params"), py::arg("quad") = "");
  m.def(
      "poisson_eval",
      [](const std::string& field, double radius, const std::vector<double>& x, const Params& p, const std::string& q) {
        const BallProblem bp(radius, field_of(field), p);
        return bp.data.meta().antisymmetric && x.at(0) >= 0.0 ? poisson_eval_antisym(bp, to_point(x), quad_of(q, p.n))
                                                               : poisson_eval(bp, to_point(x), quad_of(q, p.n));
      },
      py::arg("field"), py::arg("radius"), py::arg("x"), py::arg("params"), py::arg("quad") = "");
  m.def(
      "psi", [](double t, const Params& p, const std::string& q) { return psi_radial(t, p, quad_of(q, p.n)); },
      py::arg("abs_y"), py::arg("params"), py::arg("quad") = "");
  m.def(
      "boundary_quotient_profile",
      [](const std::string& field, const Params& p, int grid_n, const std::string& q) {
        const HarnackReport r = boundary_quotient_profile(field_of(field), p, quad_of(q, p.n), grid_n);
        return py::dict(py::arg("sup_quotient") = r.sup_quotient, py::arg("inf_quotient") = r.inf_quotient,
                        py::arg("ratio") = r.ratio, py::arg("anorm") = r.anorm_value, py::arg("c_lower") = r.c_lower,
                        py::arg("c_upper") = r.c_upper, py::arg("grid_spec") = r.grid_spec);
      },
      py::arg("field"), py::arg("params"), py::arg("grid_n") = 64, py::arg("quad") = "");
  m.def(
      "run_criterion",
      [](int id, const Params& p, const std::string& q) {
        const CriterionResult r = run_criterion(id, p, quad_of(q, p.n));
        return to_json(r).dump();
      },
      py::arg("id"), py::arg("params"), py::arg("quad") = "");
  m.def(
      "random_nonneg_antisym",
      [](std::uint64_t seed, int count, const Params& p) { return to_json(random_nonneg_antisym(seed, count, p)).dump(); },
      py::arg("seed"), py::arg("count"), py::arg("params"));
}
