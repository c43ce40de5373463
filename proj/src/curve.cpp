#include "deltoid/curve.hpp"

#include <algorithm>
#include <numbers>

namespace deltoid {

namespace {

void require_nonzero(Complex t, const char* what) {
  if (t == Complex{} || !is_finite(t)) {
    throw DomainError(std::string(what) + ": parameter must be finite and nonzero");
  }
}

double collinearity(const AffinePoint& p1, const AffinePoint& p2, const AffinePoint& p3) {
  const AffinePoint u = p2 - p1;
  const AffinePoint v = p3 - p1;
  const double d12 = distance(p1, p2);
  const double far = std::max(distance(p1, p3), distance(p2, p3));
  if (d12 == 0.0 || far == 0.0) return 0.0;
  return std::abs(u.x * v.y - u.y * v.x) / (d12 * far);
}

}  // namespace

AffinePoint gamma_affine(Complex t) {
  require_nonzero(t, "gamma_affine");
  const Complex inv = 1.0 / t;
  return {2.0 * t + inv * inv, 2.0 * inv + t * t};
}

ProjectivePoint gamma_proj(const ExtendedComplex& te) {
  if (te.is_infinite()) return {0.0, 1.0, 0.0};
  const Complex t = te.value();
  const Complex t2 = t * t;
  return {2.0 * t2 * t + 1.0, 2.0 * t + t2 * t2, t2};
}

DualLineCoords dual_line_coords(const ExtendedComplex& te) {
  if (te.is_infinite() || te.value() == Complex{}) return {0.0, 0.0, 1.0};
  const Complex t = te.value();
  return {-t * t, t, t * t * t - 1.0};
}

double tangent_line_residual(Complex t, const AffinePoint& p) {
  return std::abs(((t - p.x) * t + p.y) * t - 1.0);
}

Complex deltoid_residual(const AffinePoint& p) {
  const Complex& x = p.x;
  const Complex& y = p.y;
  const Complex xy = x * y;
  return xy * xy - 4.0 * (x * x * x + y * y * y) + 18.0 * xy - 27.0;
}

Complex dual_curve_residual(const DualLineCoords& l) {
  return l.a() * l.a() * l.a() + l.b() * l.b() * l.b() - l.a() * l.b() * l.c();
}

AffinePoint point_from_tangents(Complex t1, Complex t2, Complex t3) {
  if (!(std::abs(t1 * t2 * t3 - 1.0) <= 1e-9)) {
    throw DomainError("point_from_tangents: product of tangent parameters must be 1");
  }
  return {t1 + t2 + t3, 1.0 / t1 + 1.0 / t2 + 1.0 / t3};
}

Complex branch_sqrt(Complex t, SqrtBranch branch) {
  const Complex r = principal_sqrt(t);
  return branch == SqrtBranch::Principal ? r : -r;
}

AffinePoint sigma(Complex t, SqrtBranch branch, Complex s) {
  require_nonzero(t, "sigma");
  const Complex r = branch_sqrt(t, branch);
  return {t + s / r, 1.0 / t + s * r};
}

Complex sigma_inverse(Complex t, SqrtBranch branch, const AffinePoint& p) {
  require_nonzero(t, "sigma_inverse");
  return (p.x - t) * branch_sqrt(t, branch);
}

double property_A_residual(Complex t) {
  require_nonzero(t, "property_A_residual");
  const Complex target = 1.0 / (t * t);
  const AffinePoint p1 = gamma_affine(t);
  const AffinePoint p2 = gamma_affine(-t);
  const AffinePoint p3 = gamma_affine(target);
  // Relative tangency: residual over the size of the terms of the cubic.
  const double a = std::abs(target);
  const double scale = a * a * a + a * a * std::abs(p1.x) + a * std::abs(p1.y) + 1.0;
  return collinearity(p1, p2, p3) + tangent_line_residual(target, p1) / scale;
}

AffinePoint property_B_midpoint(Complex t) {
  require_nonzero(t, "property_B_midpoint");
  return 0.5 * (gamma_affine(t) + gamma_affine(-t));
}

AffinePoint property_C_intersection(Complex t) {
  require_nonzero(t, "property_C_intersection");
  const DualLineCoords l1 = dual_line_coords(t);
  const DualLineCoords l2 = dual_line_coords(-t);
  const Complex det = l1.a() * l2.b() - l2.a() * l1.b();
  const double scale = std::abs(l1.a()) * std::abs(l2.b()) + std::abs(l2.a()) * std::abs(l1.b());
  if (std::abs(det) <= 1e-14 * scale) {
    throw DomainError("property_C_intersection: tangent lines are parallel");
  }
  return {(l1.b() * l2.c() - l2.b() * l1.c()) / det, (l2.a() * l1.c() - l1.a() * l2.c()) / det};
}

Complex pedal_point(Complex alpha, Complex t) {
  if (!is_finite(t) || std::abs(std::abs(t) - 1.0) > 1e-9) {
    throw DomainError("pedal_point: t must lie on the unit circle");
  }
  const Complex inv = 1.0 / t;
  return 0.5 * (alpha + t + std::conj(alpha) * inv - inv * inv);
}

AffinePoint project_E2(const AffinePoint& p) {
  return {0.5 * (p.x + std::conj(p.y)), 0.5 * (p.y + std::conj(p.x))};
}

AffinePoint lambda_alpha(Complex alpha, Complex x) { return {2.0 * x - alpha, std::conj(alpha)}; }

RegionKVerdict region_K(const AffinePoint& p, double tol) {
  require_tolerance(tol, "region_K");
  const CubicRoots r = solve_tangent_cubic(p);
  RegionKVerdict v;
  for (const Complex& t : r.roots) {
    v.max_circle_deviation = std::max(v.max_circle_deviation, std::abs(std::abs(t) - 1.0));
  }
  v.e2_deviation = std::abs(p.y - std::conj(p.x));
  v.inside = v.max_circle_deviation <= tol && v.e2_deviation <= tol;
  return v;
}

std::vector<AffinePoint> trace_hypocycloid(int n_samples) {
  if (n_samples < 3) throw DomainError("trace_hypocycloid: need at least 3 samples");
  std::vector<AffinePoint> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n_samples;
    const Complex x = 2.0 * std::polar(1.0, theta) + std::polar(1.0, -2.0 * theta);
    out.push_back({x, std::conj(x)});
  }
  return out;
}

}  // namespace deltoid
