#include "deltoid/toolkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "deltoid/chebyshev.hpp"
#include "deltoid/curve.hpp"
#include "deltoid/dynamics.hpp"

namespace deltoid {

using nlohmann::ordered_json;

void SliceSpec::validate() const {
  if (resolution < 16) throw DomainError("SliceSpec: resolution must be at least 16");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw DomainError("SliceSpec: half_width must be positive");
  if (!is_finite(alpha) || !is_finite(center)) throw DomainError("SliceSpec: alpha and center must be finite");
}

Complex SliceSpec::pixel_coord(int col, int row) const {
  const double h = pixel_size();
  return center + Complex(-half_width + (col + 0.5) * h, half_width - (row + 0.5) * h);
}

AffinePoint SliceSpec::point(Complex c) const {
  return axis == SliceAxis::X ? AffinePoint{c, std::conj(alpha)} : AffinePoint{alpha, c};
}

Complex SliceSpec::pedal_to_slice(Complex pedal) const { return lambda_alpha(pedal_anchor(), pedal).x; }

std::size_t RasterImage::marked_count() const {
  return static_cast<std::size_t>(std::count_if(marked.begin(), marked.end(), [](std::uint8_t m) { return m != 0; }));
}

double julia_slice_distance(const SliceSpec& spec, Complex c) {
  const AffinePoint p = spec.point(c);
  const CubicRoots r = solve_tangent_cubic(p);
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& t : r.roots) {
    // Implicit derivative of t^3 - x t^2 + y t - 1 = 0 along the slice.
    const Complex denom = 3.0 * t * t - 2.0 * p.x * t + p.y;
    const Complex num = spec.axis == SliceAxis::X ? t * t : -t;
    const double gap = std::abs(std::abs(t) - 1.0);
    if (gap == 0.0) return 0.0;
    const double speed = std::abs(num) / std::abs(denom);
    if (!(speed > 0.0) || !std::isfinite(speed)) continue;
    best = std::min(best, gap / speed);
  }
  return best;
}

double default_band(const SliceSpec& spec) { return 0.5 * std::numbers::sqrt2 * spec.pixel_size(); }

RasterImage render_julia_slice(const SliceSpec& spec, double band) {
  spec.validate();
  if (!(band > 0.0)) throw DomainError("render_julia_slice: band must be positive");
  const int n = spec.resolution;
  RasterImage img{n, n, std::vector<double>(static_cast<std::size_t>(n) * n), std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n)};
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const Complex c = spec.pixel_coord(col, row);
      const std::size_t i = static_cast<std::size_t>(row) * n + col;
      img.gray[i] = std::min(1.0, julia_verdict(spec.point(c)).distance_to_circle);
      img.marked[i] = julia_slice_distance(spec, c) <= band ? 1 : 0;
    }
  }
  return img;
}

RasterImage render_green_slice(const SliceSpec& spec) {
  spec.validate();
  const int n = spec.resolution;
  RasterImage img{n, n, std::vector<double>(static_cast<std::size_t>(n) * n), {}};
  double gmax = 0.0;
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const double g = green_closed(spec.point(spec.pixel_coord(col, row)));
      img.at(col, row) = g;
      gmax = std::max(gmax, g);
    }
  }
  if (gmax > 0.0) {
    for (double& g : img.gray) g /= gmax;
  }
  return img;
}

std::vector<Complex> sample_pedal_cloud(Complex alpha, int n) {
  if (n < 16) throw DomainError("sample_pedal_cloud: n must be at least 16");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out.push_back(pedal_point(alpha, std::polar(1.0, 2.0 * std::numbers::pi * k / n)));
  return out;
}

std::vector<Complex> slice_pedal_cloud(const SliceSpec& spec, int n) {
  std::vector<Complex> out = sample_pedal_cloud(spec.pedal_anchor(), n);
  for (Complex& p : out) p = spec.pedal_to_slice(p);
  return out;
}

// Emission ----------------------------------------------------------------------

std::string ppm_bytes(const RasterImage& image) {
  std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.reserve(out.size() + image.gray.size() * 3);
  for (int row = 0; row < image.height; ++row) {
    for (int col = 0; col < image.width; ++col) {
      if (image.is_marked(col, row)) {
        out += static_cast<char>(255);
        out += static_cast<char>(0);
        out += static_cast<char>(0);
        continue;
      }
      const double v = std::clamp(image.at(col, row), 0.0, 1.0);
      const auto b = static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0)));
      out.append(3, b);
    }
  }
  return out;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void write_ppm(const RasterImage& image, const std::filesystem::path& path) { write_text(ppm_bytes(image), path); }

void write_json(const ordered_json& value, const std::filesystem::path& path) { write_text(value.dump(2) + "\n", path); }

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string svg_header(double x0, double y0, double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(x0) + " " + fmt(y0) + " " + fmt(w) + " " +
         fmt(h) + "\">\n";
}

// SVG y points down; the slice's imaginary axis points up.
std::string points_attr(const std::vector<Complex>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += fmt(pts[i].real()) + "," + fmt(-pts[i].imag());
  }
  return s;
}

}  // namespace

std::string svg_polyline(const std::vector<Complex>& points, bool closed) {
  double lo_x = -1, hi_x = 1, lo_y = -1, hi_y = 1;
  if (!points.empty()) {
    lo_x = hi_x = points[0].real();
    lo_y = hi_y = -points[0].imag();
  }
  for (const Complex& p : points) {
    lo_x = std::min(lo_x, p.real());
    hi_x = std::max(hi_x, p.real());
    lo_y = std::min(lo_y, -p.imag());
    hi_y = std::max(hi_y, -p.imag());
  }
  const double pad = 0.05 * std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double stroke = pad / 5.0;
  std::string out = svg_header(lo_x - pad, lo_y - pad, hi_x - lo_x + 2 * pad, hi_y - lo_y + 2 * pad);
  out += std::string("  <") + (closed ? "polygon" : "polyline") + " fill=\"none\" stroke=\"black\" stroke-width=\"" +
         fmt(stroke) + "\" points=\"" + points_attr(points) + "\"/>\n";
  out += "</svg>\n";
  return out;
}

std::string svg_raster(const SliceSpec& spec, const RasterImage& image, const std::vector<Complex>& overlay) {
  const double h = spec.pixel_size();
  const Complex c = spec.center;
  std::string out = svg_header(c.real() - spec.half_width, -c.imag() - spec.half_width, 2 * spec.half_width,
                               2 * spec.half_width);
  const bool marks_only = !image.marked.empty();
  for (int row = 0; row < image.height; ++row) {
    for (int col = 0; col < image.width; ++col) {
      const Complex p = spec.pixel_coord(col, row);
      std::string fill;
      if (marks_only) {
        if (!image.is_marked(col, row)) continue;
        fill = "red";
      } else {
        const int v = static_cast<int>(std::lround(std::clamp(image.at(col, row), 0.0, 1.0) * 255.0));
        fill = "rgb(" + std::to_string(v) + "," + std::to_string(v) + "," + std::to_string(v) + ")";
      }
      out += "  <rect x=\"" + fmt(p.real() - h / 2) + "\" y=\"" + fmt(-p.imag() - h / 2) + "\" width=\"" + fmt(h) +
             "\" height=\"" + fmt(h) + "\" fill=\"" + fill + "\"/>\n";
    }
  }
  if (!overlay.empty()) {
    out += "  <polygon fill=\"none\" stroke=\"black\" stroke-width=\"" + fmt(h / 2) + "\" points=\"" +
           points_attr(overlay) + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string csv_points(const std::vector<AffinePoint>& points) {
  std::string out = "re_x,im_x,re_y,im_y\n";
  for (const AffinePoint& p : points) {
    out += format_double(p.x.real()) + "," + format_double(p.x.imag()) + "," + format_double(p.y.real()) + "," +
           format_double(p.y.imag()) + "\n";
  }
  return out;
}

// Reports -----------------------------------------------------------------------

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json verdict_json(const AffinePoint& p) {
  const JuliaVerdict v = julia_verdict(p);
  ordered_json j;
  j["point"] = {p.x.real(), p.x.imag(), p.y.real(), p.y.imag()};
  j["green"] = green_closed(p);
  j["julia_distance"] = v.distance_to_circle;
  j["quartic_residual"] = v.quartic_residual;
  return j;
}

ordered_json permutation_json(const Permutation& p) {
  ordered_json j;
  j["images"] = p.images();
  j["cycles"] = p.cycle_notation();
  j["order"] = p.order();
  return j;
}

ordered_json relation_report_json(const RelationReport& r) {
  ordered_json j;
  j["depth"] = r.depth;
  j["involutions_ok"] = r.involutions_ok;
  j["inverses_ok"] = r.inverses_ok;
  j["braid_ok"] = r.braid_ok;
  j["coxeter_ok"] = r.coxeter_ok;
  j["generators_distinct"] = r.generators_distinct;
  j["all_ok"] = r.all_ok();
  j["coxeter_element_order"] = r.coxeter_element_order;
  ordered_json orders = ordered_json::array();
  for (const WordOrder& w : r.word_orders) orders.push_back({{"word", w.word}, {"order", w.order}});
  j["word_orders"] = orders;
  ordered_json gens = ordered_json::array();
  for (const Permutation& g : r.generators) gens.push_back(permutation_json(g));
  j["generators"] = gens;
  return j;
}

Suite parse_suite(std::string_view name) {
  if (name == "curve") return Suite::Curve;
  if (name == "dynamics") return Suite::Dynamics;
  if (name == "fatou") return Suite::Fatou;
  if (name == "monodromy") return Suite::Monodromy;
  if (name == "all") return Suite::All;
  throw ParseError("unknown suite '" + std::string(name) + "'");
}

// Verification suites -------------------------------------------------------------

namespace {

class Check {
 public:
  Check(std::string name, double tolerance) : name_(std::move(name)), tol_(tolerance) {}

  void add(double residual) {
    ++samples_;
    if (!(residual <= tol_)) ++failures_;
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    worst_ = std::max(worst_, residual);
  }
  void expect(bool ok) { add(ok ? 0.0 : std::numeric_limits<double>::infinity()); }
  bool pass() const { return failures_ == 0; }

  ordered_json json() const {
    ordered_json j;
    j["name"] = name_;
    j["samples"] = samples_;
    j["max_residual"] = std::isfinite(worst_) ? ordered_json(worst_) : ordered_json(nullptr);
    j["tolerance"] = tol_;
    j["failures"] = failures_;
    j["pass"] = pass();
    return j;
  }

 private:
  std::string name_;
  double tol_;
  std::size_t samples_ = 0;
  std::size_t failures_ = 0;
  double worst_ = 0.0;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  /// Uniform in the disc of radius r.
  Complex disc(double r) { return std::polar(r * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi)); }
  /// Modulus log-uniform in [lo, hi], argument uniform.
  Complex annulus(double lo, double hi) {
    return std::polar(std::exp(uniform(std::log(lo), std::log(hi))), uniform(0.0, 2.0 * std::numbers::pi));
  }
  AffinePoint point(double r) { return {disc(r), disc(r)}; }

 private:
  std::mt19937_64 rng_;
};

double scale4(const AffinePoint& p) { return std::pow(std::max({1.0, std::abs(p.x), std::abs(p.y)}), 4); }

double rel_distance(const AffinePoint& a, const AffinePoint& b) {
  return distance(a, b) / std::max({1.0, sup_norm(a), sup_norm(b)});
}

ordered_json finish(const std::string& suite, std::vector<Check>& checks) {
  ordered_json j;
  j["suite"] = suite;
  ordered_json arr = ordered_json::array();
  bool ok = true;
  for (const Check& c : checks) {
    arr.push_back(c.json());
    ok = ok && c.pass();
  }
  j["checks"] = arr;
  j["pass"] = ok;
  return j;
}

constexpr int kSuiteSamples = 500;

ordered_json curve_suite(Sampler& s) {
  std::vector<Check> checks;
  Check roundtrip("cubic_roundtrip", 1e-8), product("root_product", 1e-9);
  for (int i = 0; i < kSuiteSamples; ++i) {
    const AffinePoint p = s.point(10.0);
    const CubicRoots r = solve_tangent_cubic(p);
    product.add(std::abs(r.roots[0] * r.roots[1] * r.roots[2] - 1.0));
    roundtrip.add(rel_distance(point_from_tangents(r.roots[0], r.roots[1], r.roots[2]), p));
  }
  Check on_curve("gamma_on_deltoid", 1e-7), incidence("dual_incidence", 1e-9), dual_eq("dual_equation", 1e-9);
  Check prop_a("property_A", 1e-8), prop_b("property_B", 1e-8), prop_c("property_C", 1e-8);
  for (int i = 0; i < kSuiteSamples; ++i) {
    const Complex t = s.annulus(0.2, 5.0);
    const AffinePoint g = gamma_affine(t);
    on_curve.add(std::abs(deltoid_residual(g)) / scale4(g));
    incidence.add(dual_line_coords(t).incidence_residual(gamma_proj(t)));
    const DualLineCoords l = dual_line_coords(t);
    const double m = std::max({std::abs(l.a()), std::abs(l.b()), std::abs(l.c())});
    dual_eq.add(std::abs(dual_curve_residual(l)) / (m * m * m));
    prop_a.add(property_A_residual(t));
    const AffinePoint mid = property_B_midpoint(t);
    prop_b.add(std::abs(mid.x * mid.y - 1.0) / std::max(1.0, std::abs(mid.x * mid.y)));
    const AffinePoint c = property_C_intersection(t);
    const ProjectivePoint pc = ProjectivePoint::from_affine(c);
    prop_c.add(std::max(dual_line_coords(t).incidence_residual(pc), dual_line_coords(-t).incidence_residual(pc)));
  }
  checks = {roundtrip, product, on_curve, incidence, dual_eq, prop_a, prop_b, prop_c};
  return finish("curve", checks);
}

ordered_json dynamics_suite(Sampler& s) {
  Check self_map("f_gamma_is_gamma_inverse_square", 1e-8), critical("critical_image", 1e-9);
  Check jac("jacobian_on_xy_equals_1", 1e-12), swap("commutes_with_swap", 1e-10), rot("commutes_with_rotation", 1e-10);
  for (int i = 0; i < kSuiteSamples; ++i) {
    const Complex t = s.annulus(0.2, 5.0);
    self_map.add(proj_distance(apply_f_proj(gamma_proj(t)), gamma_proj(1.0 / (t * t))));
    critical.add(rel_distance(critical_image(t), gamma_affine(-t)));
    jac.add(std::abs(jacobian_det({t, 1.0 / t})));
    const AffinePoint p = s.point(5.0);
    const AffinePoint fp = apply_f(p);
    const double sc = std::max(1.0, sup_norm(fp));
    swap.add(distance(apply_f(swap_xy(p)), swap_xy(fp)) / sc);
    rot.add(distance(apply_f(rotate(p)), rotate(fp)) / sc);
  }
  Check green_match("green_closed_vs_iterative", 1e-6), functional("green_functional_equation", 1e-8);
  Check k_equiv("green_zero_iff_roots_on_circle", 0.0);
  int accepted = 0;
  while (accepted < kSuiteSamples) {
    const AffinePoint p = s.point(8.0);
    const double g = green_closed(p);
    if (g < 1e-3 || g > 10.0) continue;
    ++accepted;
    green_match.add(std::abs(g - green_iterative(p, 25)));
    functional.add(std::abs(green_closed(apply_f(p)) - 2.0 * g) / std::max(1.0, 2.0 * g));
  }
  for (int i = 0; i < kSuiteSamples; ++i) {
    // Half the samples from E^2 inside the real deltoid region, half generic.
    const Complex x = s.disc(3.0);
    const AffinePoint p = i % 2 == 0 ? AffinePoint{x, std::conj(x)} : s.point(3.0);
    const bool zero = green_closed(p) <= 1e-7;
    const RegionKVerdict k = region_K(p, 1e-7);
    const bool on_circle = k.max_circle_deviation <= 1e-7;
    k_equiv.expect(zero == on_circle && k.inside == on_circle);
  }
  Check pedal("pedal_on_julia", 1e-8), quartic("pedal_quartic", 1e-6);
  for (const Complex alpha : {Complex(0.0), Complex(3.0), Complex(1.0, 1.0)}) {
    for (const Complex& pt : sample_pedal_cloud(alpha, 360)) {
      const JuliaVerdict v = julia_verdict(lambda_alpha(alpha, pt));
      pedal.add(v.distance_to_circle);
      quartic.add(std::abs(v.normalized_quartic_residual));
    }
  }
  std::vector<Check> checks = {self_map, critical, jac, swap, rot, green_match, functional, k_equiv, pedal, quartic};
  return finish("dynamics", checks);
}

ordered_json fatou_suite(Sampler& s) {
  Check fx("f_psi_x", 1e-9), fy("f_psi_y", 1e-9), inv("psi_inversion", 1e-9);
  for (int i = 0; i < kSuiteSamples; ++i) {
    const Complex u = s.annulus(0.1, 5.0), v = s.annulus(0.1, 5.0);
    const auto [a, b] = fatou_functional_check(u, v);
    fx.add(a);
    fy.add(b);
    inv.add(fatou_inversion_residual(u, v));
  }
  Check worked("psi_x_half_half_image", 1e-12);
  const AffinePoint w = apply_f_proj(psi_x(0.5, 0.5)).to_affine();
  worked.add(distance(w, {8.0625, 16.5}));
  std::vector<Check> checks = {fx, fy, inv, worked};
  return finish("fatou", checks);
}

ordered_json monodromy_suite() {
  constexpr int kDepth = 4;
  const PreimageTree tree = build_tree(kDepth);
  Check origin("preimages_of_origin", 1e-10);
  const PreimageSet ps = preimages({0.0, 0.0});
  const std::array<AffinePoint, 4> expected = {AffinePoint{2.0 * kOmega, 2.0 * kOmega2}, {2.0 * kOmega2, 2.0 * kOmega},
                                               {0.0, 0.0}, {2.0, 2.0}};
  for (const AffinePoint& e : expected) {
    double best = std::numeric_limits<double>::infinity();
    for (const AffinePoint& p : ps.points) best = std::min(best, distance(p, e));
    origin.add(best);
  }
  Check tree_check("tree_consistency", 1e-8);
  for (int k = 1; k <= kDepth; ++k) {
    for (std::size_t i = 0; i < tree.level(k).size(); ++i) {
      tree_check.add(sup_norm(apply_f(tree.vertex(k, i)) - tree.vertex(k - 1, i / 4)));
    }
  }
  const MonodromyAction action(tree);
  Check relations("relations", 0.0), growth("coxeter_order_increases", 0.0), oracle("oracle_agreement", 0.0);
  ordered_json reports = ordered_json::array();
  std::uint64_t prev = 0;
  for (int level = 1; level <= kDepth; ++level) {
    const RelationReport r = relation_report(action, level);
    relations.expect(r.all_ok());
    growth.expect(r.coxeter_element_order > prev);
    prev = r.coxeter_element_order;
    reports.push_back(relation_report_json(r));
  }
  const PreimageTree small = build_tree(3);
  for (int k = 1; k <= 3; ++k) {
    const auto perms = chebyshev_oracle_perms(generator_loop(k), small);
    for (int level = 1; level <= 3; ++level) {
      oracle.expect(perms[static_cast<std::size_t>(level - 1)] == action.generator(k, level));
    }
  }
  std::vector<Check> checks = {origin, tree_check, relations, growth, oracle};
  ordered_json j = finish("monodromy", checks);
  j["reports"] = reports;
  return j;
}

}  // namespace

ordered_json run_verify(Suite suite, std::uint64_t seed) {
  ordered_json out;
  out["seed"] = seed;
  ordered_json suites = ordered_json::array();
  // Every suite draws from its own stream so that running a suite alone or
  // as part of "all" gives the same numbers.
  auto want = [&](Suite s) { return suite == Suite::All || suite == s; };
  if (want(Suite::Curve)) {
    Sampler s(seed * 4 + 0);
    suites.push_back(curve_suite(s));
  }
  if (want(Suite::Dynamics)) {
    Sampler s(seed * 4 + 1);
    suites.push_back(dynamics_suite(s));
  }
  if (want(Suite::Fatou)) {
    Sampler s(seed * 4 + 2);
    suites.push_back(fatou_suite(s));
  }
  if (want(Suite::Monodromy)) suites.push_back(monodromy_suite());
  bool ok = true;
  for (const auto& s : suites) ok = ok && s["pass"].get<bool>();
  out["suites"] = suites;
  out["pass"] = ok;
  return out;
}

}  // namespace deltoid
