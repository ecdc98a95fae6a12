#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <utility>

#include <Eigen/Core>

#include "polyroots/errors.hpp"

namespace polyroots {

/// Dense univariate polynomial, coefficients in ascending order: index k holds
/// the coefficient of x^k. Trailing exact zeros are dropped on construction,
/// so the zero polynomial has no coefficients and degree -1.
template <typename Scalar_> class Polynomial {
public:
  using Scalar = Scalar_;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Polynomial() = default;

  explicit Polynomial(Coefficients coeffs) : coeffs_(std::move(coeffs)) {
    trim_exact();
  }

  Polynomial(std::initializer_list<Scalar> coeffs)
      : coeffs_(static_cast<Eigen::Index>(coeffs.size())) {
    std::copy(coeffs.begin(), coeffs.end(), coeffs_.data());
    trim_exact();
  }

  static Polynomial constant(Scalar c) { return Polynomial{c}; }

  static Polynomial monomial(int power, Scalar c = Scalar(1)) {
    Coefficients coeffs = Coefficients::Zero(power + 1);
    coeffs(power) = c;
    return Polynomial(std::move(coeffs));
  }

  /// Monic polynomial with the given roots, repeated entries included.
  static Polynomial from_roots(std::span<const Scalar> roots) {
    Polynomial p = constant(Scalar(1));
    for (const Scalar &r : roots)
      p = p * Polynomial{-r, Scalar(1)};
    return p;
  }

  const Coefficients &coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 0; }

  Scalar operator[](int k) const {
    return (k >= 0 && k <= degree()) ? coeffs_(k) : Scalar(0);
  }

  Scalar leading() const { return is_zero() ? Scalar(0) : coeffs_(degree()); }

  RealScalar max_abs_coeff() const {
    return is_zero() ? RealScalar(0) : coeffs_.cwiseAbs().maxCoeff();
  }

  /// Drops leading coefficients whose magnitude is at most
  /// `zero_eps * max |a_k|`. Interior coefficients are left untouched.
  Polynomial normalized(RealScalar zero_eps) const {
    const RealScalar threshold = zero_eps * max_abs_coeff();
    Eigen::Index n = coeffs_.size();
    while (n > 0 && std::abs(coeffs_(n - 1)) <= threshold)
      --n;
    return Polynomial(Coefficients(coeffs_.head(n)));
  }

  /// Divides by the leading coefficient.
  Polynomial monic() const {
    if (is_zero())
      throw ZeroPolynomial("monic: zero polynomial");
    return Polynomial(Coefficients(coeffs_ / leading()));
  }

  template <typename T> auto operator()(const T &x) const;

  friend Polynomial operator+(const Polynomial &a, const Polynomial &b) {
    Coefficients c = Coefficients::Zero(std::max(a.coeffs_.size(), b.coeffs_.size()));
    c.head(a.coeffs_.size()) += a.coeffs_;
    c.head(b.coeffs_.size()) += b.coeffs_;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial &a) {
    return Polynomial(Coefficients(-a.coeffs_));
  }

  friend Polynomial operator-(const Polynomial &a, const Polynomial &b) {
    return a + (-b);
  }

  friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
    if (a.is_zero() || b.is_zero())
      return Polynomial();
    Coefficients c = Coefficients::Zero(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (Eigen::Index i = 0; i < a.coeffs_.size(); ++i)
      c.segment(i, b.coeffs_.size()) += a.coeffs_(i) * b.coeffs_;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(Scalar s, const Polynomial &a) {
    return Polynomial(Coefficients(s * a.coeffs_));
  }

  friend bool operator==(const Polynomial &a, const Polynomial &b) {
    return a.coeffs_.size() == b.coeffs_.size() && a.coeffs_ == b.coeffs_;
  }

private:
  void trim_exact() {
    Eigen::Index n = coeffs_.size();
    while (n > 0 && coeffs_(n - 1) == Scalar(0))
      --n;
    coeffs_.conservativeResize(n);
  }

  Coefficients coeffs_;
};

using RealPoly = Polynomial<double>;
using ComplexPoly = Polynomial<std::complex<double>>;

namespace detail {
template <typename T> struct is_complex : std::false_type {};
template <typename T> struct is_complex<std::complex<T>> : std::true_type {};
} // namespace detail

/// Horner evaluation. A real polynomial may be evaluated at a complex point.
template <typename Scalar, typename T>
auto eval(const Polynomial<Scalar> &p, const T &x) {
  using Result = decltype(Scalar() * x);
  Result acc(0);
  for (int k = p.degree(); k >= 0; --k)
    acc = acc * x + p.coeffs()(k);
  return acc;
}

template <typename Scalar_>
template <typename T>
auto Polynomial<Scalar_>::operator()(const T &x) const {
  return eval(*this, x);
}

/// Magnitude against which residuals at `x` are judged:
/// max(1, sum_k |a_k| * max(1, |x|)^k).
template <typename Scalar, typename T>
double scale(const Polynomial<Scalar> &p, const T &x) {
  const double r = std::max(1.0, static_cast<double>(std::abs(x)));
  double acc = 0.0;
  for (int k = p.degree(); k >= 0; --k)
    acc = acc * r + std::abs(p.coeffs()(k));
  return std::max(1.0, acc);
}

template <typename Scalar>
Polynomial<Scalar> derivative(const Polynomial<Scalar> &p) {
  if (p.degree() < 1)
    return Polynomial<Scalar>();
  typename Polynomial<Scalar>::Coefficients d(p.degree());
  for (int k = 0; k < p.degree(); ++k)
    d(k) = Scalar(k + 1) * p.coeffs()(k + 1);
  return Polynomial<Scalar>(std::move(d));
}

template <typename Scalar>
Polynomial<Scalar> derivative(const Polynomial<Scalar> &p, int order) {
  Polynomial<Scalar> d = p;
  for (int i = 0; i < order; ++i)
    d = derivative(d);
  return d;
}

template <typename Scalar> struct Deflation {
  Polynomial<Scalar> quotient;
  /// p(r), i.e. what synthetic division leaves behind.
  Scalar remainder;
};

/// Synthetic division of p by (z - r).
template <typename Scalar>
Deflation<Scalar> deflate(const Polynomial<Scalar> &p, const Scalar &r) {
  const int n = p.degree();
  if (n < 1)
    throw DegreeTooLow("deflate: polynomial degree must be at least 1");
  typename Polynomial<Scalar>::Coefficients q(n);
  Scalar carry = p.coeffs()(n);
  for (int k = n - 1; k >= 0; --k) {
    q(k) = carry;
    carry = p.coeffs()(k) + carry * r;
  }
  return {Polynomial<Scalar>(std::move(q)), carry};
}

/// Radius beyond which p has no real root and takes the sign of its limits:
/// max(1, sum_{k<v} |a_k| / |a_v|), widened by a relative margin of 1e-3.
inline double root_bound(const RealPoly &p) {
  if (p.degree() < 1)
    throw DegreeTooLow("root_bound: polynomial must be non-constant");
  const int v = p.degree();
  const double lower = p.coeffs().head(v).cwiseAbs().sum();
  return std::max(1.0, lower / std::abs(p.leading())) * (1.0 + 1e-3);
}

/// Q(z) = p(z + z0), expanded with binomial coefficients.
template <typename Scalar>
Polynomial<Scalar> shift(const Polynomial<Scalar> &p, const Scalar &z0) {
  const int n = p.degree();
  if (n < 1)
    return p;
  typename Polynomial<Scalar>::Coefficients q =
      Polynomial<Scalar>::Coefficients::Zero(n + 1);
  for (int k = 0; k <= n; ++k) {
    // (z + z0)^k = sum_j C(k, j) z^j z0^(k - j)
    double binom = 1.0;
    Scalar power(1);
    for (int j = k; j >= 0; --j) {
      q(j) += p.coeffs()(k) * binom * power;
      binom = binom * j / (k - j + 1);
      power *= z0;
    }
  }
  return Polynomial<Scalar>(std::move(q));
}

inline ComplexPoly to_complex(const RealPoly &p) {
  return ComplexPoly(ComplexPoly::Coefficients(p.coeffs().cast<std::complex<double>>()));
}

} // namespace polyroots
