#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace deltoid {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class InvalidTolerance : public Error {
 public:
  using Error::Error;
};

/// A precondition on an input value was violated (t = 0, |t| != 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

inline const Complex kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
inline const Complex kOmega2 = std::polar(1.0, 4.0 * std::numbers::pi / 3.0);

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// a / b, throwing DivisionByZero instead of producing inf/nan.
Complex checked_div(Complex a, Complex b);

/// Square root with argument in (-pi/2, pi/2]. std::sqrt returns -i for
/// -1 - 0i; this never does.
Complex principal_sqrt(Complex z);

void require_tolerance(double tol, const char* what);

/// A point of the Riemann sphere.
class ExtendedComplex {
 public:
  constexpr ExtendedComplex() = default;
  ExtendedComplex(Complex z) : value_(z) {}  // NOLINT: implicit on purpose
  ExtendedComplex(double re) : value_(re) {}  // NOLINT

  static constexpr ExtendedComplex infinity() {
    ExtendedComplex e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  /// Throws DomainError on the point at infinity.
  Complex value() const;

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  Complex value_{};
  bool infinite_ = false;
};

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

struct AffinePoint {
  Complex x;
  Complex y;

  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
  friend AffinePoint operator+(AffinePoint a, const AffinePoint& b) { return {a.x + b.x, a.y + b.y}; }
  friend AffinePoint operator-(AffinePoint a, const AffinePoint& b) { return {a.x - b.x, a.y - b.y}; }
  friend AffinePoint operator*(Complex s, const AffinePoint& a) { return {s * a.x, s * a.y}; }
};

inline bool is_finite(const AffinePoint& p) { return is_finite(p.x) && is_finite(p.y); }

/// max(|x|, |y|)
inline double sup_norm(const AffinePoint& p) { return std::max(std::abs(p.x), std::abs(p.y)); }

/// Hermitian distance in C^2.
inline double distance(const AffinePoint& a, const AffinePoint& b) {
  return std::hypot(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

/// Homogeneous triple [x:y:z], not all zero.
class ProjectivePoint {
 public:
  ProjectivePoint(Complex x, Complex y, Complex z);
  static ProjectivePoint from_affine(const AffinePoint& p) { return {p.x, p.y, 1.0}; }

  Complex x() const { return c_[0]; }
  Complex y() const { return c_[1]; }
  Complex z() const { return c_[2]; }
  const std::array<Complex, 3>& coords() const { return c_; }

  double max_modulus() const;
  /// Scaled so that the first coordinate of largest modulus equals 1.
  ProjectivePoint normalized() const;
  /// Affine chart z = 1. Throws DivisionByZero on the line at infinity.
  AffinePoint to_affine() const;

 private:
  std::array<Complex, 3> c_;
};

/// Coordinates [a:b:c] of the line ax + by + cz = 0.
class DualLineCoords {
 public:
  DualLineCoords(Complex a, Complex b, Complex c);

  Complex a() const { return c_[0]; }
  Complex b() const { return c_[1]; }
  Complex c() const { return c_[2]; }

  /// |ax + by + cz| relative to the magnitudes of both triples.
  double incidence_residual(const ProjectivePoint& p) const;
  bool incident(const ProjectivePoint& p, double tol) const;

 private:
  std::array<Complex, 3> c_;
};

/// Max 2x2 minor of the stacked coordinates, scaled by both max moduli;
/// zero iff P and Q are the same projective point.
double proj_distance(const ProjectivePoint& p, const ProjectivePoint& q);
bool proj_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tol);

// ---------------------------------------------------------------------------
// Polynomial roots
// ---------------------------------------------------------------------------

template <std::size_t N>
struct PolynomialRoots {
  std::array<Complex, N> roots;
  /// |p(root)| per root, after polishing.
  std::array<double, N> residuals;
};

using CubicRoots = PolynomialRoots<3>;
using QuarticRoots = PolynomialRoots<4>;

/// Separation below which two roots count as the same root.
inline constexpr double kMultiplicitySeparation = 1e-6;

/// Roots of t^3 + c2 t^2 + c1 t + c0. Cardano seed, then Newton polishing.
/// Roots are ordered lexicographically by (re, im) on a 1e-12 grid; repeated
/// roots are returned as separate entries.
CubicRoots solve_monic_cubic(Complex c2, Complex c1, Complex c0);

/// Roots of t^4 + c3 t^3 + c2 t^2 + c1 t + c0. Ferrari seed, then Newton.
QuarticRoots solve_monic_quartic(Complex c3, Complex c2, Complex c1, Complex c0);

/// Parameters of the three tangent lines of the deltoid through p: the roots
/// of t^3 - x t^2 + y t - 1. Their product is 1.
CubicRoots solve_tangent_cubic(const AffinePoint& p);

/// Orders roots by (re, im) rounded to a 1e-12 grid, ties broken exactly.
bool root_order_less(Complex a, Complex b);

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Accepts `a`, `bi`, `a+bi`, `a-bi` (and `i`, `-i`) with decimal reals.
Complex parse_complex(std::string_view text);
/// `a+bi` / `a-bi` with 17 significant digits.
std::string format_complex(Complex z);
/// Two complex literals separated by a comma.
AffinePoint parse_point(std::string_view text);
std::string format_double(double v);

}  // namespace deltoid
