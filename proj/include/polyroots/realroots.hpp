#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyroots/polynomial.hpp"
#include "polyroots/tolerances.hpp"

namespace polyroots {

struct RootReport {
  double value = 0.0;
  /// Sign-change bracket the root was bisected from. Absent for closed-form
  /// roots and for roots detected at a critical point.
  std::optional<std::pair<double, double>> bracket;
  int multiplicity = 1;
  double residual = 0.0;
};

/// Bisection on a sign change. Returns the midpoint of the final interval.
double bisect(const std::function<double(double)> &f, double lo, double hi,
              const Tolerances &tol = {});

/// Linear and quadratic formulas; a double root is reported once with
/// multiplicity 2.
std::vector<RootReport> closed_form_roots(const RealPoly &p,
                                          const Tolerances &tol = {});

/// All real roots of p, ascending, with multiplicities.
///
/// Recurses down the derivative chain: the real roots of p' split the line
/// into intervals on which p is strictly monotone, so each interval holds at
/// most one root and it is found by bisection whenever p changes sign across
/// it. Critical points at which p is numerically zero are roots of even or
/// higher multiplicity. The outer intervals are closed off with
/// +/- root_bound(p).
std::vector<RootReport> real_roots(const RealPoly &p, const Tolerances &tol = {});

/// Positive solution of x^n = a by bisection on [1, a] or [0, 1].
double nth_root(double a, int n, const Tolerances &tol = {});

namespace detail {

template <typename Scalar, typename T>
bool near_zero(const Polynomial<Scalar> &p, const T &r, double eps) {
  return std::abs(eval(p, r)) <= eps * scale(p, r);
}

} // namespace detail

/// Multiplicity by repeated deflation: divides out (z - r) while the
/// current quotient still vanishes at r.
template <typename Scalar>
int multiplicity(const Polynomial<Scalar> &p, const Scalar &r,
                 const Tolerances &tol = {}) {
  if (p.degree() < 1 || !detail::near_zero(p, r, tol.residual_eps))
    throw NotARoot("multiplicity: the point is not a root of the polynomial");
  int m = 0;
  Polynomial<Scalar> q = p;
  while (q.degree() >= 1 && detail::near_zero(q, r, tol.residual_eps)) {
    q = deflate(q, r).quotient;
    ++m;
  }
  return m;
}

/// Multiplicity as k + 1 for the smallest k with p^(k+1)(r) != 0.
///
/// Derivatives are compared after dividing by k!, i.e. as Taylor
/// coefficients about r, so that the threshold has the same meaning at every
/// order.
template <typename Scalar>
int multiplicity_by_derivatives(const Polynomial<Scalar> &p, const Scalar &r,
                                const Tolerances &tol = {}) {
  if (p.degree() < 1 || !detail::near_zero(p, r, tol.residual_eps))
    throw NotARoot("multiplicity_by_derivatives: the point is not a root");
  // taylor holds p^(k) / k! in place; its live length shrinks by one per order.
  typename Polynomial<Scalar>::Coefficients taylor = p.coeffs();
  const double rad = std::max(1.0, static_cast<double>(std::abs(r)));
  int len = static_cast<int>(taylor.size());
  int k = 0;
  while (len > 1) {
    ++k;
    for (int j = 0; j + 1 < len; ++j)
      taylor(j) = taylor(j + 1) * Scalar(double(j + 1) / k);
    --len;
    Scalar value(0);
    double magnitude = 0.0;
    for (int j = len - 1; j >= 0; --j) {
      value = value * r + taylor(j);
      magnitude = magnitude * rad + std::abs(taylor(j));
    }
    if (std::abs(value) > tol.residual_eps * std::max(1.0, magnitude))
      break;
  }
  return k;
}

} // namespace polyroots
