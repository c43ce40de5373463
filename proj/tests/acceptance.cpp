// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "deltoid/chebyshev.hpp"
#include "deltoid/curve.hpp"
#include "deltoid/dynamics.hpp"
#include "deltoid/monodromy.hpp"
#include "deltoid/toolkit.hpp"
#include "support.hpp"

#ifndef DELTOID_CLI_PATH
#error "DELTOID_CLI_PATH must point at the command-line tool"
#endif

using namespace deltoid;
using deltoid::testing::Gen;

namespace {

// Largest observed residual against its bound.
struct Tally {
  std::string name;
  double bound;
  double worst = 0.0;
  std::size_t failures = 0;

  void add(double r) {
    if (!(r <= bound)) ++failures;
    if (!(r <= worst)) worst = r;  // NaN sticks
  }
  bool ok() const { return failures == 0; }
  std::string str() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.3g %s %.0e", name.c_str(), worst, ok() ? "<=" : ">", bound);
    return buf;
  }
};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!cond) {
      pass = false;
      detail += " [failed]";
    }
  }
  void require(const Tally& t) { require(t.ok(), t.str()); }
};

double affine_rel(const AffinePoint& a, const AffinePoint& b) {
  return distance(a, b) / std::max({1.0, sup_norm(a), sup_norm(b)});
}

Outcome ac1() {
  Gen g(1001);
  Tally round("round_trip_rel", 1e-8), product("root_product", 1e-9);
  for (int i = 0; i < 10000; ++i) {
    const AffinePoint p = g.point(10.0);
    const auto& t = solve_tangent_cubic(p).roots;
    product.add(std::abs(t[0] * t[1] * t[2] - 1.0));
    round.add(affine_rel(point_from_tangents(t[0], t[1], t[2]), p));
  }
  Outcome o;
  o.require(round);
  o.require(product);
  return o;
}

Outcome ac2() {
  Gen g(1002);
  Tally curve("deltoid_on_gamma_rel", 1e-7), incidence("dual_incidence", 1e-9), dual("dual_equation", 1e-9),
      a("property_A", 1e-8), b("property_B", 1e-8), c("property_C", 1e-8);
  for (int i = 0; i < 1000; ++i) {
    const Complex t = g.annulus(0.1, 10.0);
    const AffinePoint p = gamma_affine(t);
    curve.add(std::abs(deltoid_residual(p)) / std::pow(std::max(1.0, sup_norm(p)), 4));
    const DualLineCoords l = dual_line_coords(t);
    incidence.add(l.incidence_residual(gamma_proj(t)));
    const double m = std::max({std::abs(l.a()), std::abs(l.b()), std::abs(l.c())});
    dual.add(std::abs(dual_curve_residual(l)) / (m * m * m));
    a.add(property_A_residual(t));
    const AffinePoint mid = property_B_midpoint(t);
    b.add(std::abs(mid.x * mid.y - 1.0));
    const AffinePoint cross = property_C_intersection(t);
    const ProjectivePoint pc = ProjectivePoint::from_affine(cross);
    c.add(std::max({std::abs(cross.x * cross.y - 1.0), l.incidence_residual(pc), dual_line_coords(-t).incidence_residual(pc)}));
  }
  Outcome o;
  for (const Tally* t : {&curve, &incidence, &dual, &a, &b, &c}) o.require(*t);
  return o;
}

Outcome ac3() {
  Gen g(1003);
  Tally self("f_gamma", 1e-8), crit("f_critical", 1e-9), jac("jacobian_on_xy1", 0.0), jac_rounded("jacobian_on_xy1_rounded", 1e-14),
      swap("commutes_swap", 1e-10), rot("commutes_rotation", 1e-10);
  for (int i = 0; i < 1000; ++i) {
    const Complex t = g.annulus(0.1, 10.0);
    self.add(proj_distance(apply_f_proj(gamma_proj(t)), gamma_proj(dual_f(t))));
    crit.add(affine_rel(apply_f({t, 1.0 / t}), gamma_affine(-t)));
    // x y = 1 only up to rounding of t * (1/t); the determinant is 4(1 - xy).
    jac_rounded.add(std::abs(jacobian_det({t, 1.0 / t})));
    const AffinePoint p = g.point(5.0);
    swap.add(affine_rel(apply_f(swap_xy(p)), swap_xy(apply_f(p))));
    rot.add(affine_rel(apply_f(rotate(p)), rotate(apply_f(p))));
  }
  // Points with x y = 1 exactly representable: dyadic moduli on the axes.
  for (int k = -20; k <= 20; ++k) {
    for (const Complex u : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
      const Complex x = std::ldexp(1.0, k) * u;
      const Complex y = std::ldexp(1.0, -k) / u;
      if (x * y != Complex(1.0)) continue;
      jac.add(std::abs(jacobian_det({x, y})));
    }
  }
  Outcome o;
  for (const Tally* t : {&self, &crit, &jac, &jac_rounded, &swap, &rot}) o.require(*t);
  return o;
}

Outcome ac4() {
  Gen g(1004);
  Tally iter("closed_vs_iterative25", 1e-6), functional("G_f_eq_2G", 1e-8);
  int accepted = 0;
  while (accepted < 1000) {
    const AffinePoint p = g.point(g.uniform(0.5, 60.0));
    const double gc = green_closed(p);
    if (gc < 1e-3 || gc > 10.0) continue;
    ++accepted;
    iter.add(std::abs(gc - green_iterative(p, 25)));
  }
  for (int i = 0; i < 10000; ++i) {
    const AffinePoint p = g.point(5.0);
    functional.add(std::abs(green_closed(apply_f(p)) - 2.0 * green_closed(p)));
  }
  // G = 0, roots on S^1 and region_K agree on points of K, of E^2 and of C^2.
  std::size_t disagreements = 0, inside = 0;
  for (int i = 0; i < 3000; ++i) {
    AffinePoint p;
    if (i % 3 == 0) {
      const Complex t1 = g.unit(), t2 = g.unit();
      p = point_from_tangents(t1, t2, 1.0 / (t1 * t2));
    } else if (i % 3 == 1) {
      p = g.euclidean(4.0);
    } else {
      p = g.point(3.0);
    }
    const bool zero = green_closed(p) <= 1e-7;
    bool on_circle = true;
    for (const Complex& t : solve_tangent_cubic(p).roots) on_circle = on_circle && std::abs(std::abs(t) - 1.0) <= 1e-7;
    const bool k = region_K(p, 1e-7).inside;
    if (zero != on_circle || on_circle != k) ++disagreements;
    if (k) ++inside;
  }
  Outcome o;
  o.require(iter);
  o.require(functional);
  o.require(disagreements == 0 && inside >= 1000,
            "K characterizations disagree on " + std::to_string(disagreements) + "/3000 (" + std::to_string(inside) + " inside)");
  return o;
}

Outcome ac5() {
  Tally root("pedal_root_distance", 1e-8), quartic("pedal_quartic", 1e-6), identity("E2_quartic", 1e-9);
  for (const Complex alpha : {Complex(0.0), Complex(3.0), Complex(1.0, 1.0)}) {
    for (const Complex& x : sample_pedal_cloud(alpha, 720)) {
      const JuliaVerdict v = julia_verdict(lambda_alpha(alpha, x));
      root.add(v.distance_to_circle);
      quartic.add(std::abs(v.normalized_quartic_residual));
    }
  }
  Gen g(1005);
  for (int i = 0; i < 1000; ++i) identity.add(std::abs(julia_verdict(g.euclidean(10.0)).normalized_quartic_residual));
  Outcome o;
  o.require(root);
  o.require(quartic);
  o.require(identity);
  return o;
}

Outcome ac6() {
  Gen g(1006);
  Tally fx("f_psi_x", 1e-9), fy("f_psi_y", 1e-9), inv("psi_inversion", 1e-9);
  for (int i = 0; i < 1000; ++i) {
    const Complex u = g.annulus(0.1, 5.0), v = g.annulus(0.1, 5.0);
    const auto [rx, ry] = fatou_functional_check(u, v);
    fx.add(rx);
    fy.add(ry);
    inv.add(fatou_inversion_residual(u, v));
  }
  const AffinePoint worked = apply_f(psi_x(0.5, 0.5).to_affine());
  const AffinePoint expected{8.0625, 16.5};
  const double werr = affine_rel(worked, expected);
  const double yerr = affine_rel(psi_y(0.25, 0.25).to_affine(), expected);
  Outcome o;
  o.require(fx);
  o.require(fy);
  o.require(inv);
  o.require(werr <= 1e-12 && yerr <= 1e-12, "worked value (8.0625, 16.5) error " + std::to_string(std::max(werr, yerr)));
  return o;
}

Outcome ac7() {
  const PreimageSet ps = preimages({0.0, 0.0});
  const AffinePoint want[4] = {{0.0, 0.0}, {2.0, 2.0}, {2.0 * kOmega, 2.0 * kOmega2}, {2.0 * kOmega2, 2.0 * kOmega}};
  double worst = 0.0;
  for (const AffinePoint& w : want) {
    double best = 1e300;
    for (const AffinePoint& p : ps.points) best = std::min(best, distance(p, w));
    worst = std::max(worst, best);
  }
  const PreimageTree tree = build_tree(6);
  Tally consistency("tree_consistency", 1e-8);
  bool sizes = true;
  for (int k = 1; k <= 6; ++k) {
    sizes = sizes && tree.level(k).size() == (std::size_t{1} << (2 * k));
    for (std::size_t i = 0; i < tree.level(k).size(); ++i) {
      consistency.add(sup_norm(apply_f(tree.vertex(k, i)) - tree.vertex(k - 1, i / 4)));
    }
  }
  Outcome o;
  o.require(worst <= 1e-10, "preimages(0,0) error " + std::to_string(worst));
  o.require(sizes && tree.level(6).size() == 4096, "4096 leaves at depth 6");
  o.require(consistency);
  return o;
}

std::size_t vertex_index(const PreimageTree& tree, const AffinePoint& p) {
  for (std::size_t i = 0; i < tree.level(1).size(); ++i) {
    if (distance(tree.vertex(1, i), p) <= 1e-9) return i;
  }
  throw Error("vertex not found");
}

Outcome ac8() {
  constexpr int kDepth = 5;
  const PreimageTree tree = build_tree(kDepth);
  const MonodromyAction action(tree);
  Outcome o;
  std::uint64_t prev = 0;
  bool increasing = true;
  std::string orders;
  for (int n = 1; n <= kDepth; ++n) {
    const RelationReport r = relation_report(action, n);
    std::string failed;
    if (!r.involutions_ok) failed += " involutions";
    if (!r.inverses_ok) failed += " inverses";
    if (!r.braid_ok) failed += " braid";
    if (!r.coxeter_ok) failed += " order3";
    if (!r.generators_distinct) failed += " distinct";
    o.require(failed.empty(), "depth " + std::to_string(n) + " relations" + (failed.empty() ? " ok" : ":" + failed));
    increasing = increasing && r.coxeter_element_order > prev;
    prev = r.coxeter_element_order;
    orders += (orders.empty() ? "" : ",") + std::to_string(r.coxeter_element_order);
  }
  o.require(increasing, "order of g1 g2 g3 by depth: " + orders);

  // Depth-1 image of eta_3 against the one-variable prediction.
  const PreimageTree t1 = build_tree(1);
  const std::size_t a = vertex_index(t1, {0.0, 0.0}), b = vertex_index(t1, {2.0, 2.0});
  std::vector<std::uint32_t> swap{0, 1, 2, 3};
  std::swap(swap[a], swap[b]);
  const Permutation predicted = chebyshev_oracle_perms(generator_loop(3), t1).at(0);
  const Permutation lifted = action.generator(3, 1);
  o.require(predicted == Permutation(swap) && lifted == predicted,
            "depth-1 eta_3 = " + lifted.cycle_notation() + ", oracle " + predicted.cycle_notation());
  return o;
}

Outcome ac9() {
  const PreimageTree tree = build_tree(3);
  std::size_t compared = 0, mismatched = 0;
  for (int k = 1; k <= 3; ++k) {
    for (const bool rev : {false, true}) {
      LoopPath loop = generator_loop(k);
      if (rev) loop = reversed(loop);
      const auto oracle = chebyshev_oracle_perms(loop, tree);
      const auto lifted = monodromy_perms(loop, tree);
      for (std::size_t level = 0; level < 3; ++level) {
        ++compared;
        if (!(oracle.at(level) == lifted.at(level))) ++mismatched;
      }
    }
  }
  Outcome o;
  o.require(mismatched == 0, std::to_string(compared - mismatched) + "/" + std::to_string(compared) + " (loop, depth) pairs agree");
  return o;
}

std::string run_capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) throw Error("popen failed: " + command);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  status = pclose(pipe);
  return out;
}

Outcome ac10() {
  const std::string cmd = std::string("\"") + DELTOID_CLI_PATH + "\" verify --suite all --seed 7";
  int s1 = 0, s2 = 0;
  const std::string a = run_capture(cmd, s1);
  const std::string b = run_capture(cmd, s2);
  Outcome o;
  o.require(!a.empty() && a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different"));
  o.require(s1 == 0 && s2 == 0, "exit status " + std::to_string(s1) + "," + std::to_string(s2));
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double max_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "cubic round-trip", 5.0, ac1},
      {2, "curve identities", 5.0, ac2},
      {3, "map identities", 5.0, ac3},
      {4, "Green function", 10.0, ac4},
      {5, "Julia/pedal equivalence", 5.0, ac5},
      {6, "Fatou identities", 5.0, ac6},
      {7, "preimage structure", 60.0, ac7},
      {8, "monodromy relations", 300.0, ac8},
      {9, "oracle cross-validation", 60.0, ac9},
      {10, "determinism", 60.0, ac10},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.max_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, c.max_seconds);
    std::cout << "AC" << c.id << " " << (pass ? "PASS" : "FAIL") << " " << c.title << " (" << timing
              << (in_time ? "" : " too slow") << "): " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
