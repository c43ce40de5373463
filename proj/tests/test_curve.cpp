#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "deltoid/curve.hpp"
#include "support.hpp"

using namespace deltoid;
using deltoid::testing::Gen;
using deltoid::testing::near;

TEST_CASE("gamma parametrizations") {
  CHECK(near(gamma_affine(1.0), {3.0, 3.0}, 0.0));
  CHECK(near(gamma_affine(-1.0), {-1.0, -1.0}, 0.0));
  CHECK(near(gamma_affine(2.0), {4.25, 5.0}, 0.0));
  CHECK_THROWS_AS(gamma_affine(0.0), DomainError);

  CHECK(proj_equal(gamma_proj(0.0), {1.0, 0.0, 0.0}, 1e-15));
  CHECK(proj_equal(gamma_proj(ExtendedComplex::infinity()), {0.0, 1.0, 0.0}, 1e-15));
  CHECK(proj_equal(gamma_proj(1.0), {3.0, 3.0, 1.0}, 1e-15));
}

TEST_CASE("dual line coordinates") {
  CHECK(proj_equal({-1.0, 1.0, 0.0}, {dual_line_coords(1.0).a(), dual_line_coords(1.0).b(), dual_line_coords(1.0).c()}, 1e-15));
  const DualLineCoords at0 = dual_line_coords(0.0);
  CHECK((at0.a() == Complex{} && at0.b() == Complex{} && at0.c() != Complex{}));
  const DualLineCoords atinf = dual_line_coords(ExtendedComplex::infinity());
  CHECK((atinf.a() == Complex{} && atinf.b() == Complex{} && atinf.c() != Complex{}));
  const DualLineCoords ti = dual_line_coords(Complex(0, 1));
  CHECK(near(ti.a(), 1.0, 1e-15));
  CHECK(near(ti.b(), Complex(0, 1), 1e-15));
  CHECK(near(ti.c(), Complex(-1, -1), 1e-15));
}

TEST_CASE("residuals") {
  CHECK(tangent_line_residual(1.0, {0.0, 0.0}) == 0.0);
  CHECK(tangent_line_residual(2.0, {4.25, 5.0}) == 0.0);
  CHECK(tangent_line_residual(1.0, {1.0, 0.0}) == 1.0);
  CHECK(deltoid_residual({3.0, 3.0}) == Complex(0.0));
  CHECK(deltoid_residual({0.0, 0.0}) == Complex(-27.0));
  CHECK(dual_curve_residual({0.0, 0.0, 1.0}) == Complex(0.0));
  CHECK(dual_curve_residual({1.0, 1.0, 1.0}) == Complex(1.0));
}

TEST_CASE("point_from_tangents") {
  CHECK(near(point_from_tangents(1.0, kOmega, kOmega2), {0.0, 0.0}, 1e-15));
  CHECK(near(point_from_tangents(2.0, 2.0, 0.25), {4.25, 5.0}, 0.0));
  CHECK(near(point_from_tangents(1.0, 1.0, 1.0), {3.0, 3.0}, 0.0));
  CHECK_THROWS_AS(point_from_tangents(1.0, 2.0, 3.0), DomainError);
}

TEST_CASE("sigma chart") {
  CHECK(near(sigma(1.0, SqrtBranch::Principal, -1.0), {0.0, 0.0}, 0.0));
  CHECK(near(sigma(1.0, SqrtBranch::Principal, 2.0), {3.0, 3.0}, 0.0));
  const AffinePoint c = sigma(1.0, SqrtBranch::Principal, 0.0);
  CHECK(near(c, {1.0, 1.0}, 0.0));
  CHECK(near(c.x * c.y, 1.0, 0.0));
  CHECK_THROWS_AS(sigma(0.0, SqrtBranch::Principal, 1.0), DomainError);
  // The other branch traverses the same line with s negated.
  CHECK(near(sigma(Complex(0, 1), SqrtBranch::Negated, 0.5), sigma(Complex(0, 1), SqrtBranch::Principal, -0.5), 1e-15));

  Gen g(21);
  for (int i = 0; i < 1000; ++i) {
    const Complex t = g.annulus(0.1, 10.0), s = g.disc(5.0);
    for (const SqrtBranch b : {SqrtBranch::Principal, SqrtBranch::Negated}) {
      const AffinePoint p = sigma(t, b, s);
      const double scale = std::max({1.0, std::pow(std::abs(t), 3), sup_norm(p) * std::abs(t) * std::abs(t)});
      REQUIRE(tangent_line_residual(t, p) <= 1e-9 * scale);
      REQUIRE(near(sigma_inverse(t, b, p), s, 1e-9 * std::max(1.0, std::abs(s))));
    }
  }
}

TEST_CASE("property A") {
  CHECK(property_A_residual(2.0) <= 1e-12);
  CHECK(property_A_residual(Complex(0, 1)) <= 1e-12);
  CHECK(property_A_residual(1.0) <= 1e-12);
  CHECK_THROWS_AS(property_A_residual(0.0), DomainError);
  Gen g(22);
  for (int i = 0; i < 1000; ++i) REQUIRE(property_A_residual(g.annulus(0.1, 10.0)) <= 1e-8);
}

TEST_CASE("property B") {
  CHECK(near(property_B_midpoint(1.0), {1.0, 1.0}, 0.0));
  CHECK(near(property_B_midpoint(2.0), {0.25, 4.0}, 0.0));
  CHECK(near(property_B_midpoint(Complex(0, 1)), {-1.0, -1.0}, 1e-15));
  Gen g(23);
  for (int i = 0; i < 1000; ++i) {
    const AffinePoint m = property_B_midpoint(g.annulus(0.1, 10.0));
    REQUIRE(std::abs(m.x * m.y - 1.0) <= 1e-10);
  }
}

TEST_CASE("property C") {
  // 2x2 solves carried out in mpmath.
  CHECK(near(property_C_intersection(2.0), {-0.25, -4.0}, 1e-15));
  CHECK(near(property_C_intersection(Complex(1, 1)), {Complex(0, 0.5), Complex(0, -2)}, 1e-15));
  // gamma-check lines at i and -i meet at (1, 1), not at infinity.
  CHECK(near(property_C_intersection(Complex(0, 1)), {1.0, 1.0}, 1e-15));
  CHECK_THROWS_AS(property_C_intersection(0.0), DomainError);
  Gen g(24);
  for (int i = 0; i < 1000; ++i) {
    const Complex t = g.annulus(0.1, 10.0);
    const AffinePoint c = property_C_intersection(t);
    REQUIRE(std::abs(c.x * c.y - 1.0) <= 1e-9);
    const ProjectivePoint pc = ProjectivePoint::from_affine(c);
    REQUIRE(dual_line_coords(t).incidence_residual(pc) <= 1e-8);
    REQUIRE(dual_line_coords(-t).incidence_residual(pc) <= 1e-8);
  }
}

TEST_CASE("pedal point") {
  CHECK(near(pedal_point(0.0, 1.0), 0.0, 0.0));
  CHECK(near(pedal_point(0.0, -1.0), -1.0, 0.0));
  CHECK(near(pedal_point(3.0, 1.0), 3.0, 0.0));
  CHECK_THROWS_AS(pedal_point(0.0, 1.1), DomainError);
}

TEST_CASE("property: pedal point is the perpendicular foot") {
  Gen g(25);
  for (int i = 0; i < 1000; ++i) {
    const Complex alpha = g.disc(4.0), t = g.unit();
    // The real tangent line: points x with t^3 - t^2 x + t conj(x) - 1 = 0.
    // Its direction d satisfies t^2 d = t conj(d), i.e. d = 1/sqrt(t) up to a
    // real factor. A base point: x0 = gamma(t)'s x-coordinate.
    const Complex x0 = gamma_affine(t).x;
    const Complex d = 1.0 / std::sqrt(t);
    const double s = ((alpha - x0) * std::conj(d)).real() / std::norm(d);
    const Complex foot = x0 + s * d;
    REQUIRE(near(pedal_point(alpha, t), foot, 1e-9));
  }
}

TEST_CASE("Euclidean projection") {
  CHECK(near(project_E2({Complex(0, 1), Complex(0, 1)}), {0.0, 0.0}, 0.0));
  CHECK(near(lambda_alpha(0.0, 1.0), {2.0, 0.0}, 0.0));
  Gen g(26);
  for (int i = 0; i < 1000; ++i) {
    const AffinePoint e = g.euclidean(5.0);
    REQUIRE(near(project_E2(e), e, 1e-15));
    const AffinePoint p = g.point(5.0);
    const AffinePoint q = project_E2(p);
    REQUIRE(near(q.y, std::conj(q.x), 1e-15));
    REQUIRE(near(project_E2(q), q, 1e-14));

    const Complex alpha = g.disc(3.0), x = g.disc(3.0);
    REQUIRE(near(project_E2(lambda_alpha(alpha, x)).x, x, 1e-14));
    REQUIRE(near(lambda_alpha(alpha, alpha), {alpha, std::conj(alpha)}, 1e-15));

    // A point on a real tangent line projects back onto that line.
    const Complex t = g.unit();
    const AffinePoint on_line = sigma(t, SqrtBranch::Principal, g.disc(4.0));
    REQUIRE(tangent_line_residual(t, project_E2(on_line)) <= 1e-9 * std::max(1.0, sup_norm(on_line)));
  }
}

TEST_CASE("region K") {
  CHECK(region_K({0.0, 0.0}, 1e-9).inside);
  const RegionKVerdict cusp = region_K({3.0, 3.0}, 1e-5);
  CHECK(cusp.inside);
  CHECK(cusp.max_circle_deviation <= 1e-5);
  const RegionKVerdict out = region_K({4.25, 5.0}, 1e-9);
  CHECK_FALSE(out.inside);
  CHECK(out.max_circle_deviation == doctest::Approx(1.0));
  CHECK_FALSE(region_K({Complex(0.1, 0.1), 0.0}, 1e-9).inside);
  CHECK_THROWS_AS(region_K({0.0, 0.0}, 0.0), InvalidTolerance);
}

TEST_CASE("trace_hypocycloid") {
  const auto pts = trace_hypocycloid(720);
  REQUIRE(pts.size() == 720);
  CHECK(near(pts[0].x, 3.0, 1e-15));
  CHECK(near(pts[360].x, -1.0, 1e-14));
  for (const AffinePoint& p : pts) {
    CHECK(std::abs(deltoid_residual(p)) <= 1e-8 * std::pow(std::max(1.0, sup_norm(p)), 4));
    CHECK(near(p.y, std::conj(p.x), 0.0));
  }
  CHECK_THROWS_AS(trace_hypocycloid(2), DomainError);
}

TEST_CASE("property: parametrization and duality") {
  Gen g(27);
  for (int i = 0; i < 1000; ++i) {
    const Complex t = g.annulus(0.1, 10.0);
    const AffinePoint p = gamma_affine(t);
    REQUIRE(std::abs(deltoid_residual(p)) <= 1e-7 * std::pow(std::max(1.0, sup_norm(p)), 4));
    const DualLineCoords l = dual_line_coords(t);
    const double m = std::max({std::abs(l.a()), std::abs(l.b()), std::abs(l.c())});
    REQUIRE(std::abs(dual_curve_residual(l)) <= 1e-9 * m * m * m);
    REQUIRE(l.incidence_residual(gamma_proj(t)) <= 1e-9);
  }
}
