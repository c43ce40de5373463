// Command-line front end for the deltoid library.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <initializer_list>
#include <iostream>
#include <string>
#include <string_view>

#include "deltoid/algebra.hpp"
#include "deltoid/curve.hpp"
#include "deltoid/dynamics.hpp"
#include "deltoid/monodromy.hpp"
#include "deltoid/toolkit.hpp"

namespace {

using deltoid::AffinePoint;
using deltoid::Complex;
using nlohmann::ordered_json;

constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;

std::string ext(const std::string& path) {
  std::string e = std::filesystem::path(path).extension().string();
  for (char& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return e;
}

/// Lower-cased extension of `path`, which must be one of `allowed`.
std::string require_ext(const std::string& path, std::initializer_list<std::string_view> allowed) {
  const std::string e = ext(path);
  for (std::string_view a : allowed) {
    if (e == a) return e;
  }
  std::string list;
  for (std::string_view a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw deltoid::ParseError("--out " + path + ": expected one of " + list);
}

void emit(const ordered_json& j, bool as_json, const std::string& text) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

ordered_json point_json(const AffinePoint& p) { return {p.x.real(), p.x.imag(), p.y.real(), p.y.imag()}; }

std::string point_text(const AffinePoint& p) {
  return deltoid::format_complex(p.x) + "," + deltoid::format_complex(p.y);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deltoid map (x, y) -> (y^2 - 2x, x^2 - 2y): algebra, dynamics and monodromy"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  std::string point_arg;
  auto add_point = [&](CLI::App* sub) {
    sub->add_option("--point", point_arg, "Point \"x,y\" with complex literals such as 1+2i")->required();
    sub->add_flag("--json", as_json, "Machine-readable output");
  };

  auto* eval_f = app.add_subcommand("eval-f", "Apply the map to a point");
  add_point(eval_f);

  auto* roots = app.add_subcommand("roots", "Tangent-line parameters through a point");
  add_point(roots);

  auto* green = app.add_subcommand("green", "Green function at a point");
  add_point(green);
  int iterative = 0;
  green->add_option("--iterative", iterative, "Also evaluate 2^-N log+ ||f^N||")->check(CLI::PositiveNumber);

  auto* julia = app.add_subcommand("julia", "Julia set verdict for a point");
  add_point(julia);

  auto* pedal = app.add_subcommand("pedal", "Sample the pedal curve of the real deltoid");
  std::string alpha_arg = "0", out_arg;
  int samples = 720;
  pedal->add_option("--alpha", alpha_arg, "Pedal point (complex literal)");
  pedal->add_option("--samples", samples, "Number of samples")->check(CLI::Range(16, 10000000));
  pedal->add_option("--out", out_arg, "Output file (.csv, .svg or .json)")->required();
  pedal->add_flag("--json", as_json, "Machine-readable output");

  auto* render = app.add_subcommand("render", "Render a slice through the Euclidean plane");
  std::string axis_arg = "x", center_arg = "0", mode_arg = "julia";
  double half_width = 3.5, band = 0.0;
  int res = 512;
  render->add_option("--axis", axis_arg, "x or y")->check(CLI::IsMember({"x", "y"}));
  render->add_option("--alpha", alpha_arg, "Slice anchor (complex literal)");
  render->add_option("--center", center_arg, "Window center in the slice coordinate");
  render->add_option("--halfwidth", half_width, "Window half-width");
  render->add_option("--res", res, "Pixels per side (at least 16)");
  render->add_option("--mode", mode_arg, "green or julia")->check(CLI::IsMember({"green", "julia"}));
  render->add_option("--band", band, "Julia band width (default: half the pixel diagonal)");
  render->add_option("--out", out_arg, "Output file (.ppm or .svg)")->required();
  render->add_flag("--json", as_json, "Machine-readable output");

  auto* trace = app.add_subcommand("trace-deltoid", "Sample the real deltoid");
  int trace_samples = 720;
  trace->add_option("--samples", trace_samples, "Number of samples")->check(CLI::Range(3, 10000000));
  trace->add_option("--out", out_arg, "Output file (.csv or .svg)")->required();
  trace->add_flag("--json", as_json, "Machine-readable output");

  auto* mono = app.add_subcommand("monodromy", "Generator actions on the preimage tree");
  int depth = 3;
  std::string word_arg, report_arg;
  mono->add_option("--depth", depth, "Tree depth (1-6)")->check(CLI::Range(1, 6));
  mono->add_option("--word", word_arg, "Word in the generators, e.g. \"1 2 -1\"");
  mono->add_option("--report", report_arg, "Write the relation report as JSON");
  mono->add_flag("--json", as_json, "Machine-readable output");

  auto* verify = app.add_subcommand("verify", "Run seeded self-checks; prints a JSON report");
  std::string suite_arg = "all";
  std::uint64_t seed = 1;
  verify->add_option("--suite", suite_arg, "curve, dynamics, fatou, monodromy or all")
      ->check(CLI::IsMember({"curve", "dynamics", "fatou", "monodromy", "all"}));
  verify->add_option("--seed", seed, "Random seed");
  verify->add_flag("--json", as_json, "Accepted for uniformity; the report is always JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (eval_f->parsed()) {
      const AffinePoint p = deltoid::parse_point(point_arg);
      const AffinePoint q = deltoid::apply_f(p);
      emit({{"point", point_json(p)}, {"image", point_json(q)}}, as_json, point_text(q) + "\n");
    } else if (roots->parsed()) {
      const AffinePoint p = deltoid::parse_point(point_arg);
      const deltoid::CubicRoots r = deltoid::solve_tangent_cubic(p);
      ordered_json j{{"point", point_json(p)}, {"roots", ordered_json::array()}, {"residuals", r.residuals}};
      std::string text;
      for (const Complex& t : r.roots) {
        j["roots"].push_back(deltoid::complex_json(t));
        text += deltoid::format_complex(t) + "\n";
      }
      emit(j, as_json, text);
    } else if (green->parsed()) {
      const AffinePoint p = deltoid::parse_point(point_arg);
      ordered_json j{{"point", point_json(p)}, {"green", deltoid::green_closed(p)}};
      std::string text = deltoid::format_double(deltoid::green_closed(p)) + "\n";
      if (iterative > 0) {
        const double g = deltoid::green_iterative(p, iterative);
        j["iterative_steps"] = iterative;
        j["green_iterative"] = g;
        text += deltoid::format_double(g) + " (iterative, " + std::to_string(iterative) + " steps)\n";
      }
      emit(j, as_json, text);
    } else if (julia->parsed()) {
      const AffinePoint p = deltoid::parse_point(point_arg);
      const ordered_json j = deltoid::verdict_json(p);
      const deltoid::JuliaVerdict v = deltoid::julia_verdict(p);
      emit(j, as_json,
           "green " + deltoid::format_double(j["green"].get<double>()) + "\njulia_distance " +
               deltoid::format_double(v.distance_to_circle) + "\nquartic_residual " +
               deltoid::format_double(v.quartic_residual) + "\n");
    } else if (pedal->parsed()) {
      const std::string e = require_ext(out_arg, {".csv", ".svg", ".json"});
      const Complex alpha = deltoid::parse_complex(alpha_arg);
      const std::vector<Complex> cloud = deltoid::sample_pedal_cloud(alpha, samples);
      std::vector<AffinePoint> pts;
      for (const Complex& x : cloud) pts.push_back({x, std::conj(x)});
      if (e == ".svg") {
        deltoid::write_text(deltoid::svg_polyline(cloud, true), out_arg);
      } else if (e == ".json") {
        ordered_json arr = ordered_json::array();
        for (const AffinePoint& p : pts) arr.push_back(point_json(p));
        deltoid::write_json({{"alpha", deltoid::complex_json(alpha)}, {"points", arr}}, out_arg);
      } else {
        deltoid::write_text(deltoid::csv_points(pts), out_arg);
      }
      emit({{"out", out_arg}, {"samples", samples}}, as_json, "wrote " + std::to_string(samples) + " points to " + out_arg + "\n");
    } else if (render->parsed()) {
      const std::string e = require_ext(out_arg, {".ppm", ".svg"});
      deltoid::SliceSpec spec;
      spec.axis = axis_arg == "x" ? deltoid::SliceAxis::X : deltoid::SliceAxis::Y;
      spec.alpha = deltoid::parse_complex(alpha_arg);
      spec.center = deltoid::parse_complex(center_arg);
      spec.half_width = half_width;
      spec.resolution = res;
      spec.validate();
      const bool julia_mode = mode_arg == "julia";
      const double b = band > 0.0 ? band : deltoid::default_band(spec);
      const deltoid::RasterImage img =
          julia_mode ? deltoid::render_julia_slice(spec, b) : deltoid::render_green_slice(spec);
      if (e == ".svg") {
        const std::vector<Complex> overlay = julia_mode ? deltoid::slice_pedal_cloud(spec, 720) : std::vector<Complex>{};
        deltoid::write_text(deltoid::svg_raster(spec, img, overlay), out_arg);
      } else {
        deltoid::write_ppm(img, out_arg);
      }
      ordered_json j{{"out", out_arg}, {"width", img.width}, {"height", img.height}, {"mode", mode_arg}};
      if (julia_mode) {
        j["band"] = b;
        j["marked_pixels"] = img.marked_count();
      }
      emit(j, as_json, "wrote " + std::to_string(img.width) + "x" + std::to_string(img.height) + " image to " + out_arg + "\n");
    } else if (trace->parsed()) {
      const std::string e = require_ext(out_arg, {".csv", ".svg"});
      const std::vector<AffinePoint> pts = deltoid::trace_hypocycloid(trace_samples);
      if (e == ".svg") {
        std::vector<Complex> xs;
        for (const AffinePoint& p : pts) xs.push_back(p.x);
        deltoid::write_text(deltoid::svg_polyline(xs, true), out_arg);
      } else {
        deltoid::write_text(deltoid::csv_points(pts), out_arg);
      }
      emit({{"out", out_arg}, {"samples", trace_samples}}, as_json,
           "wrote " + std::to_string(trace_samples) + " points to " + out_arg + "\n");
    } else if (mono->parsed()) {
      const deltoid::MonodromyAction action(deltoid::build_tree(depth));
      const deltoid::RelationReport r = deltoid::relation_report(action, depth);
      ordered_json j = deltoid::relation_report_json(r);
      std::string text = "depth " + std::to_string(depth) + "\n";
      for (int k = 1; k <= 3; ++k) {
        text += "g" + std::to_string(k) + " order " + std::to_string(r.generators[k - 1].order()) +
                (depth <= 2 ? " " + r.generators[k - 1].cycle_notation() : std::string()) + "\n";
      }
      text += std::string("involutions ") + (r.involutions_ok ? "ok" : "FAIL") + "\ninverses " +
              (r.inverses_ok ? "ok" : "FAIL") + "\nbraid " + (r.braid_ok ? "ok" : "FAIL") + "\ncoxeter " +
              (r.coxeter_ok ? "ok" : "FAIL") + "\ndistinct " + (r.generators_distinct ? "ok" : "FAIL") +
              "\norder(g1 g2 g3) " + std::to_string(r.coxeter_element_order) + "\n";
      if (!word_arg.empty()) {
        const std::vector<int> word = deltoid::parse_word(word_arg);
        const deltoid::Permutation p = action.word_perm(word);
        j["word"] = {{"letters", word}, {"permutation", deltoid::permutation_json(p)}};
        text += "word order " + std::to_string(p.order()) + "\n" + p.cycle_notation() + "\n";
      }
      if (!report_arg.empty()) deltoid::write_json(j, report_arg);
      emit(j, as_json, text);
      return r.all_ok() ? 0 : kExitFailedCheck;
    } else if (verify->parsed()) {
      const ordered_json j = deltoid::run_verify(deltoid::parse_suite(suite_arg), seed);
      std::cout << j.dump(2) << "\n";
      return j["pass"].get<bool>() ? 0 : kExitFailedCheck;
    }
  } catch (const deltoid::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const deltoid::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailedCheck;
  }
  return 0;
}
