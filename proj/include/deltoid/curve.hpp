#pragma once

#include <vector>

#include "deltoid/algebra.hpp"

namespace deltoid {

/// Parameter t of the tangent line of the deltoid at gamma(t).
using TangentParam = ExtendedComplex;

enum class SqrtBranch { Principal, Negated };

/// A point sigma_t(s) = (t + s/r, 1/t + s r) on the tangent line at gamma(t),
/// with r = +-sqrt(t) fixed by `branch`.
struct LineChartPoint {
  Complex t;
  SqrtBranch branch = SqrtBranch::Principal;
  Complex s;
};

struct RegionKVerdict {
  bool inside = false;
  /// max over the three tangent parameters of ||t_i| - 1|.
  double max_circle_deviation = 0.0;
  /// |y - conj(x)|
  double e2_deviation = 0.0;
};

/// Default tolerance on |y - conj(x)| for membership in the Euclidean plane.
inline constexpr double kE2Tolerance = 1e-9;

// Parametrizations ----------------------------------------------------------

/// (2t + t^-2, 2t^-1 + t^2)
AffinePoint gamma_affine(Complex t);
/// [2t^3 + 1 : 2t + t^4 : t^2], with gamma(inf) = [0:1:0].
ProjectivePoint gamma_proj(const ExtendedComplex& t);
/// [-t^2 : t : t^3 - 1]; both t = 0 and t = inf give the line at infinity.
DualLineCoords dual_line_coords(const ExtendedComplex& t);

// Residuals -----------------------------------------------------------------

/// |t^3 - t^2 x + t y - 1|
double tangent_line_residual(Complex t, const AffinePoint& p);
/// x^2 y^2 - 4(x^3 + y^3) + 18xy - 27
Complex deltoid_residual(const AffinePoint& p);
/// a^3 + b^3 - abc
Complex dual_curve_residual(const DualLineCoords& line);

/// Inverse of the tangent cubic: (t1 + t2 + t3, 1/t1 + 1/t2 + 1/t3).
/// Requires |t1 t2 t3 - 1| <= 1e-9.
AffinePoint point_from_tangents(Complex t1, Complex t2, Complex t3);

Complex branch_sqrt(Complex t, SqrtBranch branch);
AffinePoint sigma(Complex t, SqrtBranch branch, Complex s);
inline AffinePoint sigma(const LineChartPoint& c) { return sigma(c.t, c.branch, c.s); }
/// Chart coordinate s of a point assumed to lie on the tangent line at gamma(t).
Complex sigma_inverse(Complex t, SqrtBranch branch, const AffinePoint& p);

// Classical tangent-line properties ------------------------------------------

/// Collinearity of gamma(t), gamma(-t), gamma(1/t^2) plus tangency of that
/// line at gamma(1/t^2). Both terms are scale-free.
double property_A_residual(Complex t);
/// Midpoint of gamma(t) and gamma(-t); lies on xy = 1.
AffinePoint property_B_midpoint(Complex t);
/// Affine intersection of the tangent lines at gamma(t) and gamma(-t).
AffinePoint property_C_intersection(Complex t);

// Euclidean plane -----------------------------------------------------------

/// Foot of the perpendicular from (alpha, conj(alpha)) to the real tangent
/// line with parameter t, |t| = 1; returns its x-coordinate.
Complex pedal_point(Complex alpha, Complex t);
/// Orthogonal projection onto y = conj(x).
AffinePoint project_E2(const AffinePoint& p);
/// (2x - alpha, conj(alpha)): inverse of project_E2 on the line y = conj(alpha).
AffinePoint lambda_alpha(Complex alpha, Complex x);

RegionKVerdict region_K(const AffinePoint& p, double tol);

/// n points 2e^{i theta} + e^{-2 i theta} of the real deltoid, as (x, conj(x)).
std::vector<AffinePoint> trace_hypocycloid(int n_samples);

}  // namespace deltoid
