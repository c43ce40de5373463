#include "deltoid/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "deltoid/curve.hpp"

namespace deltoid {

AffinePoint apply_f(const AffinePoint& p) { return {p.y * p.y - 2.0 * p.x, p.x * p.x - 2.0 * p.y}; }

ProjectivePoint apply_f_proj(const ProjectivePoint& p) {
  const Complex x = p.x(), y = p.y(), z = p.z();
  return {y * y - 2.0 * x * z, x * x - 2.0 * y * z, z * z};
}

ExtendedComplex apply_f_infinity(const ExtendedComplex& zeta) {
  if (zeta.is_infinite()) return Complex{};
  const Complex z = zeta.value();
  if (z == Complex{}) return ExtendedComplex::infinity();
  return 1.0 / (z * z);
}

ExtendedComplex dual_f(const ExtendedComplex& t) { return apply_f_infinity(t); }

ExtendedComplex deltoid_self_map(Complex t) {
  if (t == Complex{} || !is_finite(t)) throw DomainError("deltoid_self_map: t must be finite and nonzero");
  const ExtendedComplex image = dual_f(t);
  const double d = proj_distance(apply_f_proj(gamma_proj(t)), gamma_proj(image));
  if (!(d <= 1e-8)) throw Error("deltoid_self_map: f(gamma(t)) != gamma(1/t^2)");
  return image;
}

Complex jacobian_det(const AffinePoint& p) { return 4.0 * (1.0 - p.x * p.y); }

AffinePoint critical_image(Complex t) {
  if (t == Complex{} || !is_finite(t)) throw DomainError("critical_image: t must be finite and nonzero");
  return apply_f({t, 1.0 / t});
}

double green_closed(const AffinePoint& p) {
  const CubicRoots r = solve_tangent_cubic(p);
  double g = 0.0;
  for (const Complex& t : r.roots) g = std::max(g, std::abs(std::log(std::abs(t))));
  return g;
}

double green_iterative(const AffinePoint& p, int n, double escape_radius) {
  if (n < 1) throw DomainError("green_iterative: n must be at least 1");
  require_tolerance(escape_radius, "green_iterative escape radius");
  const double switch_radius = std::min(escape_radius, 1e100);

  AffinePoint z = p;
  int k = 0;
  for (; k < n && sup_norm(z) <= switch_radius; ++k) z = apply_f(z);
  if (k == n) return std::max(0.0, std::log(sup_norm(z))) / std::ldexp(1.0, n);

  // z = e^L u with ||u|| = 1; f(z) = e^{2L} (u_y^2 - 2e^{-L} u_x, u_x^2 - 2e^{-L} u_y).
  // L itself overflows after ~1000 doublings, so carry g = 2^-k L instead.
  double norm = sup_norm(z);
  double g = std::log(norm) / std::ldexp(1.0, k);
  AffinePoint u{z.x / norm, z.y / norm};
  for (; k < n; ++k) {
    const double e = std::exp(-std::ldexp(g, k));
    const AffinePoint w{u.y * u.y - 2.0 * e * u.x, u.x * u.x - 2.0 * e * u.y};
    const double m = sup_norm(w);
    g += std::log(m) / std::ldexp(1.0, k + 1);
    u = {w.x / m, w.y / m};
  }
  return std::max(0.0, g);
}

JuliaVerdict julia_verdict(const AffinePoint& p) {
  const CubicRoots r = solve_tangent_cubic(p);
  JuliaVerdict v;
  v.distance_to_circle = std::abs(std::abs(r.roots[0]) - 1.0);
  for (const Complex& t : r.roots) {
    v.distance_to_circle = std::min(v.distance_to_circle, std::abs(std::abs(t) - 1.0));
  }
  const Complex a = p.x - std::conj(p.y);
  const Complex b = std::conj(p.x) * std::conj(p.x) - p.y * p.y;
  v.quartic_residual = 2.0 * (a * a * a).real() + (a * a * b).real();
  const double scale = std::max({1.0, std::abs(p.x), std::abs(p.y)});
  v.normalized_quartic_residual = v.quartic_residual / std::pow(scale, 4);
  return v;
}

ProjectivePoint psi_x(Complex u, Complex v) {
  const Complex uv = u * v;
  return {uv * (u + v) + 1.0, u + v + uv * uv, uv};
}

ProjectivePoint psi_y(Complex u, Complex v) {
  const Complex uv = u * v;
  return {u + v + uv * uv, uv * (u + v) + 1.0, uv};
}

std::pair<double, double> fatou_functional_check(Complex u, Complex v) {
  const Complex u2 = u * u, v2 = v * v;
  return {proj_distance(apply_f_proj(psi_x(u, v)), psi_y(u2, v2)),
          proj_distance(apply_f_proj(psi_y(u, v)), psi_x(u2, v2))};
}

double fatou_inversion_residual(Complex u, Complex v) {
  return proj_distance(psi_x(checked_div(1.0, u), checked_div(1.0, v)), psi_y(u, v));
}

OrbitRecord orbit(const AffinePoint& p, int n_max, double escape_radius) {
  if (n_max < 0) throw DomainError("orbit: n_max must be non-negative");
  require_tolerance(escape_radius, "orbit escape radius");
  OrbitRecord rec;
  rec.points.reserve(static_cast<std::size_t>(n_max) + 1);
  rec.points.push_back(p);
  for (int k = 0;; ++k) {
    if (sup_norm(rec.points.back()) > escape_radius) {
      rec.escaped = true;
      rec.escape_index = k;
      break;
    }
    if (k == n_max) break;
    rec.points.push_back(apply_f(rec.points.back()));
  }
  return rec;
}

}  // namespace deltoid
