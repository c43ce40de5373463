#pragma once

// Shared generators and comparison helpers for the unit tests.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "deltoid/algebra.hpp"

namespace deltoid::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Complex disc(double r) { return std::polar(r * std::sqrt(uniform(0.0, 1.0)), angle()); }
  Complex annulus(double lo, double hi) { return std::polar(std::exp(uniform(std::log(lo), std::log(hi))), angle()); }
  Complex unit() { return std::polar(1.0, angle()); }
  double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }
  AffinePoint point(double r) { return {disc(r), disc(r)}; }
  AffinePoint euclidean(double r) {
    const Complex x = disc(r);
    return {x, std::conj(x)};
  }

 private:
  std::mt19937_64 rng_;
};

inline bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }
inline bool near(const AffinePoint& a, const AffinePoint& b, double tol) { return distance(a, b) <= tol; }

inline double rel(const AffinePoint& a, const AffinePoint& b) {
  return distance(a, b) / std::max({1.0, sup_norm(a), sup_norm(b)});
}

}  // namespace deltoid::testing
