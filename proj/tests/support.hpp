#pragma once

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <random>
#include <vector>

#include "polyroots/polynomial.hpp"

namespace testing {

using cd = std::complex<double>;
using polyroots::ComplexPoly;
using polyroots::RealPoly;

// POLYROOTS_TEST_SEED overrides the fixed seed for soak runs.
inline std::mt19937_64 &rng() {
  static std::mt19937_64 gen([] {
    const char *env = std::getenv("POLYROOTS_TEST_SEED");
    return env ? std::strtoull(env, nullptr, 10) : 20241018ull;
  }());
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng());
}

// Coefficients in [-range, range]; the leading one is kept away from zero.
inline RealPoly random_real_poly(int degree, double range = 10.0) {
  RealPoly::Coefficients c(degree + 1);
  for (int k = 0; k <= degree; ++k)
    c(k) = uniform(-range, range);
  if (std::abs(c(degree)) < 0.1)
    c(degree) = c(degree) < 0 ? -1.0 : 1.0;
  return RealPoly(c);
}

inline ComplexPoly random_complex_poly(int degree, double range = 10.0) {
  ComplexPoly::Coefficients c(degree + 1);
  for (int k = 0; k <= degree; ++k)
    c(k) = cd(uniform(-range, range), uniform(-range, range));
  if (std::abs(c(degree)) < 0.1)
    c(degree) = 1.0;
  return ComplexPoly(c);
}

// Points drawn from [lo, hi] with pairwise distance at least sep.
inline std::vector<double> separated_points(int n, double lo, double hi, double sep) {
  std::vector<double> out;
  while (static_cast<int>(out.size()) < n) {
    const double v = uniform(lo, hi);
    if (std::all_of(out.begin(), out.end(), [&](double w) { return std::abs(v - w) >= sep; }))
      out.push_back(v);
  }
  return out;
}

// Multiset comparison: every entry of a pairs off with a distinct entry of b.
inline bool same_multiset(std::vector<cd> a, std::vector<cd> b, double tol) {
  if (a.size() != b.size())
    return false;
  for (const cd &z : a) {
    auto best = b.end();
    double dist = tol;
    for (auto it = b.begin(); it != b.end(); ++it) {
      if (std::abs(*it - z) <= dist) {
        dist = std::abs(*it - z);
        best = it;
      }
    }
    if (best == b.end())
      return false;
    b.erase(best);
  }
  return true;
}

inline bool same_multiset(const std::vector<double> &a, const std::vector<double> &b, double tol) {
  return same_multiset(std::vector<cd>(a.begin(), a.end()), std::vector<cd>(b.begin(), b.end()), tol);
}

template <typename Scalar>
polyroots::Polynomial<Scalar> from_roots(const std::vector<Scalar> &roots) {
  return polyroots::Polynomial<Scalar>::from_roots(std::span<const Scalar>(roots));
}

} // namespace testing
