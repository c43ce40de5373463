#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "deltoid/chebyshev.hpp"
#include "deltoid/curve.hpp"
#include "deltoid/dynamics.hpp"
#include "deltoid/monodromy.hpp"
#include "deltoid/toolkit.hpp"

namespace py = pybind11;
using deltoid::AffinePoint;
using deltoid::Complex;

namespace {

using Pair = std::pair<Complex, Complex>;

Pair to_pair(const AffinePoint& p) { return {p.x, p.y}; }

py::object to_python(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

deltoid::SliceSpec make_spec(const std::string& axis, Complex alpha, Complex center, double half_width, int resolution) {
  deltoid::SliceSpec spec;
  if (axis == "x") {
    spec.axis = deltoid::SliceAxis::X;
  } else if (axis == "y") {
    spec.axis = deltoid::SliceAxis::Y;
  } else {
    throw deltoid::ParseError("axis must be 'x' or 'y'");
  }
  spec.alpha = alpha;
  spec.center = center;
  spec.half_width = half_width;
  spec.resolution = resolution;
  spec.validate();
  return spec;
}

py::dict image_dict(const deltoid::RasterImage& img) {
  py::dict d;
  d["width"] = img.width;
  d["height"] = img.height;
  d["gray"] = img.gray;
  d["marked"] = std::vector<bool>(img.marked.begin(), img.marked.end());
  return d;
}

}  // namespace

PYBIND11_MODULE(_deltoid, m) {
  m.doc() = "The deltoid map (x, y) -> (y^2 - 2x, x^2 - 2y): curve geometry, Green function, Julia slices and monodromy.";

  // Registered base first: pybind11 tries translators newest first.
  static py::exception<deltoid::Error> error(m, "Error", PyExc_ValueError);
  py::register_exception<deltoid::DomainError>(m, "DomainError", error.ptr());
  py::register_exception<deltoid::ParseError>(m, "ParseError", error.ptr());
  py::register_exception<deltoid::InvalidTolerance>(m, "InvalidTolerance", error.ptr());
  py::register_exception<deltoid::DivisionByZero>(m, "DivisionByZero", error.ptr());
  py::register_exception<deltoid::LiftAmbiguity>(m, "LiftAmbiguity", error.ptr());
  py::register_exception<deltoid::EndpointMismatch>(m, "EndpointMismatch", error.ptr());
  py::register_exception<deltoid::IoError>(m, "IoError", error.ptr());

  m.def("parse_complex", &deltoid::parse_complex, py::arg("text"));
  m.def("format_complex", &deltoid::format_complex, py::arg("z"));

  m.def(
      "tangent_parameters",
      [](Complex x, Complex y) {
        const auto r = deltoid::solve_tangent_cubic({x, y});
        return std::vector<Complex>(r.roots.begin(), r.roots.end());
      },
      py::arg("x"), py::arg("y"), "Roots of t^3 - x t^2 + y t - 1, i.e. the tangent lines through (x, y).");
  m.def(
      "point_from_tangents", [](Complex a, Complex b, Complex c) { return to_pair(deltoid::point_from_tangents(a, b, c)); },
      py::arg("t1"), py::arg("t2"), py::arg("t3"));
  m.def(
      "gamma", [](Complex t) { return to_pair(deltoid::gamma_affine(t)); }, py::arg("t"));
  m.def(
      "deltoid_residual", [](Complex x, Complex y) { return deltoid::deltoid_residual({x, y}); }, py::arg("x"), py::arg("y"));
  m.def("pedal_point", &deltoid::pedal_point, py::arg("alpha"), py::arg("t"));
  m.def("sample_pedal_cloud", &deltoid::sample_pedal_cloud, py::arg("alpha"), py::arg("n"));
  m.def(
      "in_K", [](Complex x, Complex y, double tol) { return deltoid::region_K({x, y}, tol).inside; }, py::arg("x"),
      py::arg("y"), py::arg("tol") = 1e-9);

  m.def(
      "apply_f", [](Complex x, Complex y) { return to_pair(deltoid::apply_f({x, y})); }, py::arg("x"), py::arg("y"));
  m.def(
      "green", [](Complex x, Complex y) { return deltoid::green_closed({x, y}); }, py::arg("x"), py::arg("y"));
  m.def(
      "green_iterative", [](Complex x, Complex y, int n) { return deltoid::green_iterative({x, y}, n); }, py::arg("x"),
      py::arg("y"), py::arg("n") = 25);
  m.def(
      "julia_verdict", [](Complex x, Complex y) { return to_python(deltoid::verdict_json({x, y})); }, py::arg("x"),
      py::arg("y"));

  m.def(
      "preimages",
      [](Complex x, Complex y) {
        std::vector<Pair> out;
        for (const AffinePoint& p : deltoid::preimages({x, y}).points) out.push_back(to_pair(p));
        return out;
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "generator_permutations",
      [](int depth) {
        const deltoid::MonodromyAction action(deltoid::build_tree(depth));
        std::vector<std::vector<std::uint32_t>> out;
        for (int k = 1; k <= 3; ++k) out.push_back(action.generator(k).images());
        return out;
      },
      py::arg("depth"), "Images of the leaves of the depth-n preimage tree under the three generator loops.");
  m.def(
      "word_permutation",
      [](const std::vector<int>& word, int depth) {
        return deltoid::word_perm(word, deltoid::build_tree(depth)).images();
      },
      py::arg("word"), py::arg("depth"));
  m.def(
      "relation_report", [](int depth) { return to_python(deltoid::relation_report_json(deltoid::verify_relations(depth))); },
      py::arg("depth"));
  m.def(
      "chebyshev_lift",
      [](const std::vector<Complex>& loop, int eps) {
        const deltoid::ChebyshevLift lift = deltoid::chebyshev_lift_1d(loop, eps);
        py::dict d;
        d["exchanged"] = lift.arcs_exchanged;
        py::list arcs;
        for (const deltoid::ChebyshevArc& a : lift.arcs) {
          py::dict arc;
          arc["start"] = a.start;
          arc["end"] = a.end;
          arc["closed"] = a.closed;
          arc["winding_minus2"] = a.winding_minus2;
          arc["winding_plus2"] = a.winding_plus2;
          arcs.append(arc);
        }
        d["arcs"] = arcs;
        return d;
      },
      py::arg("loop"), py::arg("eps") = 1);

  m.def(
      "render",
      [](const std::string& mode, const std::string& axis, Complex alpha, Complex center, double half_width, int resolution,
         std::optional<double> band) {
        const deltoid::SliceSpec spec = make_spec(axis, alpha, center, half_width, resolution);
        if (mode == "green") return image_dict(deltoid::render_green_slice(spec));
        if (mode != "julia") throw deltoid::ParseError("mode must be 'green' or 'julia'");
        return image_dict(deltoid::render_julia_slice(spec, band.value_or(deltoid::default_band(spec))));
      },
      py::arg("mode") = "julia", py::arg("axis") = "x", py::arg("alpha") = Complex{}, py::arg("center") = Complex{},
      py::arg("half_width") = 3.0, py::arg("resolution") = 256, py::arg("band") = py::none());
  m.def(
      "render_ppm",
      [](const std::string& axis, Complex alpha, Complex center, double half_width, int resolution) {
        const deltoid::SliceSpec spec = make_spec(axis, alpha, center, half_width, resolution);
        return py::bytes(deltoid::ppm_bytes(deltoid::render_julia_slice(spec, deltoid::default_band(spec))));
      },
      py::arg("axis") = "x", py::arg("alpha") = Complex{}, py::arg("center") = Complex{}, py::arg("half_width") = 3.0,
      py::arg("resolution") = 256);

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed) {
        return to_python(deltoid::run_verify(deltoid::parse_suite(suite), seed));
      },
      py::arg("suite") = "all", py::arg("seed") = 0);
}
