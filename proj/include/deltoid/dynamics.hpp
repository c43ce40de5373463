#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "deltoid/algebra.hpp"

namespace deltoid {

inline constexpr double kDefaultEscapeRadius = 1e3;

struct OrbitRecord {
  std::vector<AffinePoint> points;
  bool escaped = false;
  std::optional<int> escape_index;
};

struct JuliaVerdict {
  /// min over the tangent parameters of ||t_i| - 1|; zero exactly on J.
  double distance_to_circle = 0.0;
  /// 2 Re(x - conj y)^3 + Re[(x - conj y)^2 (conj(x)^2 - y^2)]
  double quartic_residual = 0.0;
  /// quartic_residual / max(1, |x|, |y|)^4
  double normalized_quartic_residual = 0.0;
};

// The map ---------------------------------------------------------------------

/// (y^2 - 2x, x^2 - 2y)
AffinePoint apply_f(const AffinePoint& p);
/// [y^2 - 2xz : x^2 - 2yz : z^2]
ProjectivePoint apply_f_proj(const ProjectivePoint& p);
/// zeta -> 1/zeta^2 on the line at infinity (0 and inf exchanged).
ExtendedComplex apply_f_infinity(const ExtendedComplex& zeta);
/// Action on tangent lines: the line with parameter t maps to the one with 1/t^2.
ExtendedComplex dual_f(const ExtendedComplex& t);
/// Returns 1/t^2 after checking f(gamma(t)) == gamma(1/t^2) projectively.
ExtendedComplex deltoid_self_map(Complex t);

/// 4(1 - xy)
Complex jacobian_det(const AffinePoint& p);
/// f(t, 1/t), which equals gamma(-t).
AffinePoint critical_image(Complex t);

/// Involution (x, y) -> (y, x).
inline AffinePoint swap_xy(const AffinePoint& p) { return {p.y, p.x}; }
/// Order-3 symmetry (x, y) -> (w x, w^2 y).
inline AffinePoint rotate(const AffinePoint& p) { return {kOmega * p.x, kOmega2 * p.y}; }

// Green function --------------------------------------------------------------

/// log max{|t_i|, 1/|t_i|} over the roots of the tangent cubic.
double green_closed(const AffinePoint& p);

/// 2^-n log+ ||f^n(p)||_inf. Once the sup-norm passes `escape_radius` the
/// orbit is carried in log-scaled form, so large n never overflows.
double green_iterative(const AffinePoint& p, int n, double escape_radius = kDefaultEscapeRadius);

// Julia and Fatou sets ----------------------------------------------------------

JuliaVerdict julia_verdict(const AffinePoint& p);

/// [u^2 v + u v^2 + 1 : u + v + u^2 v^2 : uv]
ProjectivePoint psi_x(Complex u, Complex v);
/// [u + v + u^2 v^2 : u^2 v + u v^2 + 1 : uv]
ProjectivePoint psi_y(Complex u, Complex v);

/// Projective distances of f(psi_x(u,v)) from psi_y(u^2,v^2) and of
/// f(psi_y(u,v)) from psi_x(u^2,v^2).
std::pair<double, double> fatou_functional_check(Complex u, Complex v);
/// Projective distance of psi_x(1/u, 1/v) from psi_y(u, v).
double fatou_inversion_residual(Complex u, Complex v);

OrbitRecord orbit(const AffinePoint& p, int n_max, double escape_radius = kDefaultEscapeRadius);

}  // namespace deltoid
