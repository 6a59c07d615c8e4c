#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "minklab/boundary.hpp"
#include "minklab/error.hpp"
#include "minklab/scenario.hpp"
#include "minklab/verify.hpp"

namespace py = pybind11;
using namespace minklab;

PYBIND11_MODULE(_minklab, m) {
  m.doc() = "Minkowski content estimation";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::enum_<Functional>(m, "Functional")
      .value("M", Functional::M)
      .value("SM", Functional::SM)
      .value("FrakM", Functional::FrakM)
      .value("ScriptM", Functional::ScriptM);
  py::enum_<Target>(m, "Target")
      .value("set", Target::set)
      .value("topological", Target::topological_boundary)
      .value("reduced", Target::reduced_boundary);

  py::class_<ConvexBody>(m, "ConvexBody")
      .def_property_readonly("dimension", &ConvexBody::dimension)
      .def_property_readonly("is_ball", &ConvexBody::is_ball)
      .def_property_readonly("vertices", &ConvexBody::vertices)
      .def("__repr__", &ConvexBody::describe);
  m.def("make_ball", &make_ball, py::arg("dimension"), py::arg("radius"));
  m.def("make_polytope", &make_polytope, py::arg("points"));
  m.def("make_box", &make_box, py::arg("lo"), py::arg("hi"));
  m.def("make_interval", &make_interval, py::arg("lo"), py::arg("hi"));
  m.def("support", &support);
  m.def("gauge", &gauge);
  m.def("polar", &polar);
  m.def("scale", &scale);
  m.def("minkowski_sum", &minkowski_sum);
  m.def("diameter", &diameter);
  m.def("containment_constants", [](const ConvexBody& c) {
    const ContainmentConstants k = containment_constants(c);
    return py::make_tuple(k.a, k.b);
  });

  py::class_<AxisBox>(m, "AxisBox")
      .def(py::init([](Vector lo, Vector hi) { return AxisBox{std::move(lo), std::move(hi)}; }))
      .def_readonly("lo", &AxisBox::lo)
      .def_readonly("hi", &AxisBox::hi);

  py::class_<Shape>(m, "Shape")
      .def_static("ball", &Shape::ball, py::arg("center"), py::arg("radius"), py::arg("closed") = false)
      .def_static("box", &Shape::box, py::arg("lo"), py::arg("hi"), py::arg("closed") = false)
      .def_static("points", &Shape::points)
      .def_static("closed_interval", [](double a, double b) { return Shape::intervals(IntervalSet::closed(a, b)); })
      .def_static("open_interval", [](double a, double b) { return Shape::intervals(IntervalSet::open(a, b)); })
      .def_static("point", [](double x) { return Shape::intervals(IntervalSet::point(x)); })
      .def_static("unite", &Shape::unite)
      .def_static("intersect", &Shape::intersect)
      .def_static("subtract", &Shape::subtract)
      .def_property_readonly("dimension", &Shape::dimension)
      .def("contains", py::overload_cast<const Vector&>(&Shape::contains, py::const_));

  py::class_<Domain>(m, "Domain")
      .def_static("whole", [](const AxisBox& w) { return Domain::whole(w); })
      .def_static("region", [](const Shape& s, const AxisBox& w) { return Domain::region(s, w); });

  m.def("exact_1d_content",
        py::overload_cast<const Shape&, const Domain&, const ConvexBody&, Functional, Target, double>(&exact_1d_content),
        py::arg("shape"), py::arg("domain"), py::arg("body"), py::arg("functional"), py::arg("target"), py::arg("eps"));

  m.def(
      "raster_content",
      [](const Shape& e, const Domain& d, const ConvexBody& c, Functional f, Target t, double eps, std::int64_t cells) {
        return RasterEvaluator(e, d, Grid::covering(d.window(), cells)).evaluate(f, t, c, eps);
      },
      py::arg("shape"), py::arg("domain"), py::arg("body"), py::arg("functional"), py::arg("target"), py::arg("eps"),
      py::arg("cells"));

  m.def("density", [](const Shape& e, const Vector& x, double r0) {
    const DensityEstimate d = density_estimate(e, x, default_radii(r0));
    return py::make_tuple(d.theta, std::string(to_string(d.classification)));
  });

  py::class_<ContentEstimate>(m, "ContentEstimate")
      .def_readonly("value", &ContentEstimate::value)
      .def_readonly("lower", &ContentEstimate::lower)
      .def_readonly("upper", &ContentEstimate::upper)
      .def_readonly("converged", &ContentEstimate::converged);
  py::class_<RunRow>(m, "RunRow")
      .def_property_readonly("functional", [](const RunRow& r) { return std::string(to_string(r.request.functional)); })
      .def_property_readonly("target", [](const RunRow& r) { return std::string(to_string(r.request.target)); })
      .def_readonly("body", &RunRow::body)
      .def_property_readonly("eps", [](const RunRow& r) { return r.curve.eps; })
      .def_property_readonly("values", [](const RunRow& r) { return r.curve.values; })
      .def_readonly("estimate", &RunRow::estimate)
      .def_readonly("target_value", &RunRow::target)
      .def_readonly("exists", &RunRow::exists);

  m.def("run_scenario", [](const std::filesystem::path& file, std::optional<std::int64_t> grid) {
    Scenario s = load_scenario(file);
    Overrides o;
    o.grid = grid;
    apply_overrides(s, o);
    return run_scenario(s).rows;
  }, py::arg("file"), py::arg("grid") = std::nullopt);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("passed", &CheckResult::passed)
      .def_readonly("detail", &CheckResult::detail);
  m.def("verify", [](const std::string& filter, std::optional<double> rel_tol) {
    VerifyOptions opt;
    opt.filter = filter;
    opt.rel_tol = rel_tol;
    py::gil_scoped_release release;
    return run_checks(opt);
  }, py::arg("filter") = "", py::arg("rel_tol") = std::nullopt);
}
