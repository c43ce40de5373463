#include "deltoid/algebra.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <span>

namespace deltoid {

Complex checked_div(Complex a, Complex b) {
  if (b == Complex{}) throw DivisionByZero("complex division by zero");
  return a / b;
}

Complex principal_sqrt(Complex z) {
  Complex r = std::sqrt(z);
  if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
  if (r.real() < 0.0) r = -r;
  return r;
}

void require_tolerance(double tol, const char* what) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidTolerance(std::string(what) + ": tolerance must be positive and finite");
  }
}

Complex ExtendedComplex::value() const {
  if (infinite_) throw DomainError("point at infinity has no finite value");
  return value_;
}

// ---------------------------------------------------------------------------

ProjectivePoint::ProjectivePoint(Complex x, Complex y, Complex z) : c_{x, y, z} {
  if (x == Complex{} && y == Complex{} && z == Complex{}) {
    throw DomainError("projective point with all coordinates zero");
  }
}

double ProjectivePoint::max_modulus() const {
  return std::max({std::abs(c_[0]), std::abs(c_[1]), std::abs(c_[2])});
}

ProjectivePoint ProjectivePoint::normalized() const {
  std::size_t k = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(c_[i]) > std::abs(c_[k])) k = i;
  }
  const Complex s = c_[k];
  return {c_[0] / s, c_[1] / s, c_[2] / s};
}

AffinePoint ProjectivePoint::to_affine() const {
  return {checked_div(c_[0], c_[2]), checked_div(c_[1], c_[2])};
}

DualLineCoords::DualLineCoords(Complex a, Complex b, Complex c) : c_{a, b, c} {
  if (a == Complex{} && b == Complex{} && c == Complex{}) {
    throw DomainError("line coordinates with all entries zero");
  }
}

double DualLineCoords::incidence_residual(const ProjectivePoint& p) const {
  const double scale = std::max({std::abs(c_[0]), std::abs(c_[1]), std::abs(c_[2])}) * p.max_modulus();
  return std::abs(c_[0] * p.x() + c_[1] * p.y() + c_[2] * p.z()) / scale;
}

bool DualLineCoords::incident(const ProjectivePoint& p, double tol) const {
  require_tolerance(tol, "incident");
  return incidence_residual(p) <= tol;
}

double proj_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  const auto& a = p.coords();
  const auto& b = q.coords();
  double m = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) m = std::max(m, std::abs(a[i] * b[j] - a[j] * b[i]));
  }
  return m / (p.max_modulus() * q.max_modulus());
}

bool proj_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tol) {
  require_tolerance(tol, "proj_equal");
  return proj_distance(p, q) <= tol;
}

// ---------------------------------------------------------------------------
// Polynomial solvers
// ---------------------------------------------------------------------------

namespace {

constexpr int kPolishSteps = 3;
constexpr double kOrderGrid = 1e-12;

// Monic polynomial, coefficients highest degree first (leading 1 implicit).
template <std::size_t N>
struct MonicPoly {
  std::array<Complex, N> c;

  Complex eval(Complex t) const {
    Complex v = 1.0;
    for (const Complex& ci : c) v = v * t + ci;
    return v;
  }

  void eval_with_derivative(Complex t, Complex& v, Complex& dv) const {
    v = 1.0;
    dv = 0.0;
    for (const Complex& ci : c) {
      dv = dv * t + v;
      v = v * t + ci;
    }
  }
};

template <std::size_t N>
PolynomialRoots<N> polish_and_order(const MonicPoly<N>& poly, std::array<Complex, N> roots) {
  PolynomialRoots<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    Complex t = roots[i];
    Complex v, dv;
    poly.eval_with_derivative(t, v, dv);
    double res = std::abs(v);
    for (int step = 0; step < kPolishSteps && res > 0.0; ++step) {
      if (dv == Complex{}) break;
      const Complex next = t - v / dv;
      Complex nv, ndv;
      poly.eval_with_derivative(next, nv, ndv);
      // A step that does not reduce the residual is rejected; near a repeated
      // root this keeps two seeds from being dragged onto the same value.
      if (!(std::abs(nv) < res)) break;
      t = next;
      v = nv;
      dv = ndv;
      res = std::abs(nv);
    }
    roots[i] = t;
  }
  std::sort(roots.begin(), roots.end(), root_order_less);
  out.roots = roots;
  for (std::size_t i = 0; i < N; ++i) out.residuals[i] = std::abs(poly.eval(roots[i]));
  return out;
}

Complex complex_cbrt(Complex z) {
  if (z == Complex{}) return {};
  return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

// Roots of u^3 + p u + q.
std::array<Complex, 3> depressed_cubic(Complex p, Complex q) {
  const Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  const Complex a = -q / 2.0 + disc;
  const Complex b = -q / 2.0 - disc;
  const Complex c = complex_cbrt(std::abs(a) >= std::abs(b) ? a : b);
  if (c == Complex{}) return {Complex{}, Complex{}, Complex{}};
  std::array<Complex, 3> u;
  Complex rot = 1.0;
  for (int k = 0; k < 3; ++k) {
    const Complex ck = c * rot;
    u[k] = ck - p / (3.0 * ck);
    rot *= kOmega;
  }
  return u;
}

std::array<Complex, 3> cardano(Complex c2, Complex c1, Complex c0) {
  const Complex shift = c2 / 3.0;
  const Complex p = c1 - c2 * c2 / 3.0;
  const Complex q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
  auto u = depressed_cubic(p, q);
  for (auto& ui : u) ui -= shift;
  return u;
}

// Roots of z^2 + b z + c, avoiding cancellation.
std::array<Complex, 2> quadratic(Complex b, Complex c) {
  const Complex d = std::sqrt(b * b - 4.0 * c);
  const Complex s1 = b + d;
  const Complex s2 = b - d;
  const Complex big = -(std::abs(s1) >= std::abs(s2) ? s1 : s2) / 2.0;
  if (big == Complex{}) return {Complex{}, Complex{}};
  return {big, c / big};
}

std::array<Complex, 4> ferrari(Complex c3, Complex c2, Complex c1, Complex c0) {
  const Complex shift = c3 / 4.0;
  const Complex c3s = c3 * c3;
  const Complex p = c2 - 3.0 * c3s / 8.0;
  const Complex q = c1 - c3 * c2 / 2.0 + c3s * c3 / 8.0;
  const Complex r = c0 - c3 * c1 / 4.0 + c3s * c2 / 16.0 - 3.0 * c3s * c3s / 256.0;

  std::array<Complex, 4> y;
  const double scale = std::max({std::abs(p), std::sqrt(std::abs(r)), std::pow(std::abs(q), 2.0 / 3.0)});
  if (scale == 0.0) {
    y = {Complex{}, Complex{}, Complex{}, Complex{}};
  } else {
    // Resolvent: m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0.
    const auto ms = cardano(p, p * p / 4.0 - r, -q * q / 8.0);
    Complex m = ms[0];
    for (const Complex& mi : ms) {
      if (std::abs(mi) > std::abs(m)) m = mi;
    }
    if (std::abs(m) <= 1e-14 * scale) {
      const auto z = quadratic(p, r);
      const Complex s0 = std::sqrt(z[0]);
      const Complex s1 = std::sqrt(z[1]);
      y = {s0, -s0, s1, -s1};
    } else {
      const Complex s = std::sqrt(2.0 * m);
      const Complex h = q / (2.0 * s);
      const auto a = quadratic(-s, p / 2.0 + m + h);
      const auto b = quadratic(s, p / 2.0 + m - h);
      y = {a[0], a[1], b[0], b[1]};
    }
  }
  for (auto& yi : y) yi -= shift;
  return y;
}

void require_finite(std::span<const Complex> coeffs, const char* what) {
  for (const Complex& c : coeffs) {
    if (!is_finite(c)) throw DomainError(std::string(what) + ": non-finite coefficient");
  }
}

}  // namespace

bool root_order_less(Complex a, Complex b) {
  const double ar = std::nearbyint(a.real() / kOrderGrid);
  const double br = std::nearbyint(b.real() / kOrderGrid);
  if (ar != br) return ar < br;
  const double ai = std::nearbyint(a.imag() / kOrderGrid);
  const double bi = std::nearbyint(b.imag() / kOrderGrid);
  if (ai != bi) return ai < bi;
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

CubicRoots solve_monic_cubic(Complex c2, Complex c1, Complex c0) {
  const std::array<Complex, 3> coeffs{c2, c1, c0};
  require_finite(coeffs, "solve_monic_cubic");
  return polish_and_order(MonicPoly<3>{coeffs}, cardano(c2, c1, c0));
}

QuarticRoots solve_monic_quartic(Complex c3, Complex c2, Complex c1, Complex c0) {
  const std::array<Complex, 4> coeffs{c3, c2, c1, c0};
  require_finite(coeffs, "solve_monic_quartic");
  return polish_and_order(MonicPoly<4>{coeffs}, ferrari(c3, c2, c1, c0));
}

CubicRoots solve_tangent_cubic(const AffinePoint& p) {
  return solve_monic_cubic(-p.x, p.y, -1.0);
}

// ---------------------------------------------------------------------------
// Text
// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("invalid complex literal '" + std::string(whole) + "'");
  }
  return v;
}

// Coefficient of an imaginary part: "" / "+" mean 1, "-" means -1.
double parse_imag_coeff(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty complex literal");

  // Sign that separates real and imaginary parts: not leading, not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
  }

  if (s.back() != 'i') {
    if (split != std::string_view::npos) throw ParseError("invalid complex literal '" + std::string(s) + "'");
    return {parse_real(s, s), 0.0};
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  if (split == std::string_view::npos) return {0.0, parse_imag_coeff(body, s)};
  return {parse_real(body.substr(0, split), s), parse_imag_coeff(body.substr(split), s)};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(Complex z) {
  std::string out = format_double(z.real());
  out += std::signbit(z.imag()) ? '-' : '+';
  out += format_double(std::abs(z.imag()));
  out += 'i';
  return out;
}

AffinePoint parse_point(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw ParseError("point must be two complex literals separated by a comma: '" + std::string(text) + "'");
  }
  return {parse_complex(text.substr(0, comma)), parse_complex(text.substr(comma + 1))};
}

}  // namespace deltoid
