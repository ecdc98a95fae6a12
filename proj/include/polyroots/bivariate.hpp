#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "polyroots/polynomial.hpp"
#include "polyroots/tolerances.hpp"

namespace polyroots {

/// Dense bivariate polynomial. grid(i, j) is the coefficient of x^i y^j.
/// Trailing all-zero rows and columns are dropped on construction; the zero
/// polynomial is the empty grid.
template <typename Scalar_> class BivariatePolynomial {
public:
  using Scalar = Scalar_;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using Grid = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Univariate = Polynomial<Scalar>;

  BivariatePolynomial() = default;

  explicit BivariatePolynomial(Grid grid) : grid_(std::move(grid)) { trim_exact(); }

  /// Embeds a polynomial in x (y-free).
  static BivariatePolynomial in_x(const Univariate &p) {
    return BivariatePolynomial(Grid(p.coeffs()));
  }

  /// Embeds a polynomial in y (x-free).
  static BivariatePolynomial in_y(const Univariate &p) {
    return BivariatePolynomial(Grid(p.coeffs().transpose()));
  }

  static BivariatePolynomial term(Scalar c, int x_power, int y_power) {
    Grid g = Grid::Zero(x_power + 1, y_power + 1);
    g(x_power, y_power) = c;
    return BivariatePolynomial(std::move(g));
  }

  const Grid &grid() const noexcept { return grid_; }
  int deg_x() const noexcept { return static_cast<int>(grid_.rows()) - 1; }
  int deg_y() const noexcept { return static_cast<int>(grid_.cols()) - 1; }
  bool is_zero() const noexcept { return grid_.size() == 0; }

  /// Degree at least 1 in both variables.
  bool is_pure() const noexcept { return deg_x() >= 1 && deg_y() >= 1; }

  Scalar coeff(int i, int j) const {
    return (i >= 0 && j >= 0 && i <= deg_x() && j <= deg_y()) ? grid_(i, j) : Scalar(0);
  }

  RealScalar max_abs_coeff() const {
    return is_zero() ? RealScalar(0) : grid_.cwiseAbs().maxCoeff();
  }

  /// Coefficient of y^k as a polynomial in x.
  Univariate y_coefficient(int k) const {
    if (k < 0 || k > deg_y())
      return Univariate();
    return Univariate(typename Univariate::Coefficients(grid_.col(k)));
  }

  /// Coefficient of x^k as a polynomial in y.
  Univariate x_coefficient(int k) const {
    if (k < 0 || k > deg_x())
      return Univariate();
    return Univariate(typename Univariate::Coefficients(grid_.row(k).transpose()));
  }

  /// p(x0, y) as a polynomial in y.
  Univariate specialize_x(const Scalar &x0) const {
    typename Univariate::Coefficients c = Univariate::Coefficients::Zero(grid_.cols());
    for (int i = deg_x(); i >= 0; --i)
      c = c * x0 + grid_.row(i).transpose();
    return Univariate(std::move(c));
  }

  /// p(x, y0) as a polynomial in x.
  Univariate specialize_y(const Scalar &y0) const {
    typename Univariate::Coefficients c = Univariate::Coefficients::Zero(grid_.rows());
    for (int j = deg_y(); j >= 0; --j)
      c = c * y0 + grid_.col(j);
    return Univariate(std::move(c));
  }

  Scalar operator()(const Scalar &x, const Scalar &y) const {
    return eval(specialize_x(x), y);
  }

  /// Drops trailing rows/columns whose entries are all at most
  /// `zero_eps * max |c_ij|`.
  BivariatePolynomial normalized(RealScalar zero_eps) const {
    if (is_zero())
      return {};
    const RealScalar threshold = zero_eps * max_abs_coeff();
    Eigen::Index rows = grid_.rows(), cols = grid_.cols();
    while (rows > 0 && grid_.row(rows - 1).head(cols).cwiseAbs().maxCoeff() <= threshold)
      --rows;
    while (cols > 0 && rows > 0 &&
           grid_.col(cols - 1).head(rows).cwiseAbs().maxCoeff() <= threshold)
      --cols;
    if (rows == 0 || cols == 0)
      return BivariatePolynomial();
    return BivariatePolynomial(Grid(grid_.topLeftCorner(rows, cols)));
  }

  /// Multiplies by y^k.
  BivariatePolynomial times_y_power(int k) const {
    if (is_zero() || k == 0)
      return *this;
    Grid g = Grid::Zero(grid_.rows(), grid_.cols() + k);
    g.rightCols(grid_.cols()) = grid_;
    return BivariatePolynomial(std::move(g));
  }

  friend BivariatePolynomial operator+(const BivariatePolynomial &a,
                                       const BivariatePolynomial &b) {
    Grid g = Grid::Zero(std::max(a.grid_.rows(), b.grid_.rows()),
                        std::max(a.grid_.cols(), b.grid_.cols()));
    g.topLeftCorner(a.grid_.rows(), a.grid_.cols()) += a.grid_;
    g.topLeftCorner(b.grid_.rows(), b.grid_.cols()) += b.grid_;
    return BivariatePolynomial(std::move(g));
  }

  friend BivariatePolynomial operator-(const BivariatePolynomial &a) {
    return BivariatePolynomial(Grid(-a.grid_));
  }

  friend BivariatePolynomial operator-(const BivariatePolynomial &a,
                                       const BivariatePolynomial &b) {
    return a + (-b);
  }

  friend BivariatePolynomial operator*(const BivariatePolynomial &a,
                                       const BivariatePolynomial &b) {
    if (a.is_zero() || b.is_zero())
      return BivariatePolynomial();
    Grid g = Grid::Zero(a.grid_.rows() + b.grid_.rows() - 1,
                        a.grid_.cols() + b.grid_.cols() - 1);
    for (Eigen::Index i = 0; i < a.grid_.rows(); ++i)
      for (Eigen::Index j = 0; j < a.grid_.cols(); ++j)
        if (a.grid_(i, j) != Scalar(0))
          g.block(i, j, b.grid_.rows(), b.grid_.cols()) += a.grid_(i, j) * b.grid_;
    return BivariatePolynomial(std::move(g));
  }

  friend BivariatePolynomial operator*(Scalar s, const BivariatePolynomial &a) {
    return BivariatePolynomial(Grid(s * a.grid_));
  }

  friend BivariatePolynomial operator*(const Univariate &px, const BivariatePolynomial &a) {
    return in_x(px) * a;
  }

  friend bool operator==(const BivariatePolynomial &a, const BivariatePolynomial &b) {
    return a.grid_.rows() == b.grid_.rows() && a.grid_.cols() == b.grid_.cols() &&
           a.grid_ == b.grid_;
  }

private:
  void trim_exact() {
    Eigen::Index rows = grid_.rows(), cols = grid_.cols();
    while (rows > 0 && (grid_.row(rows - 1).head(cols).array() == Scalar(0)).all())
      --rows;
    while (cols > 0 && rows > 0 && (grid_.col(cols - 1).head(rows).array() == Scalar(0)).all())
      --cols;
    if (rows == 0 || cols == 0) {
      grid_.resize(0, 0);
      return;
    }
    if (rows != grid_.rows() || cols != grid_.cols())
      grid_ = Grid(grid_.topLeftCorner(rows, cols));
  }

  Grid grid_;
};

using BivarPoly = BivariatePolynomial<double>;

template <typename Scalar>
BivariatePolynomial<Scalar> partial_y(const BivariatePolynomial<Scalar> &p) {
  if (p.deg_y() < 1)
    return {};
  typename BivariatePolynomial<Scalar>::Grid g(p.grid().rows(), p.deg_y());
  for (int j = 0; j < p.deg_y(); ++j)
    g.col(j) = Scalar(j + 1) * p.grid().col(j + 1);
  return BivariatePolynomial<Scalar>(std::move(g));
}

template <typename Scalar>
BivariatePolynomial<Scalar> partial_x(const BivariatePolynomial<Scalar> &p) {
  if (p.deg_x() < 1)
    return {};
  typename BivariatePolynomial<Scalar>::Grid g(p.deg_x(), p.grid().cols());
  for (int i = 0; i < p.deg_x(); ++i)
    g.row(i) = Scalar(i + 1) * p.grid().row(i + 1);
  return BivariatePolynomial<Scalar>(std::move(g));
}

/// max(1, sum |c_ij| max(1,|x|)^i max(1,|y|)^j).
template <typename Scalar>
double scale(const BivariatePolynomial<Scalar> &p, const Scalar &x, const Scalar &y) {
  const double rx = std::max(1.0, static_cast<double>(std::abs(x)));
  const double ry = std::max(1.0, static_cast<double>(std::abs(y)));
  double acc = 0.0;
  for (int i = p.deg_x(); i >= 0; --i) {
    double row = 0.0;
    for (int j = p.deg_y(); j >= 0; --j)
      row = row * ry + std::abs(p.grid()(i, j));
    acc = acc * rx + row;
  }
  return std::max(1.0, acc);
}

/// p(x, y) = sum_k alpha_k(x) y^k.
struct YExpansion {
  std::vector<RealPoly> coeffs_in_x;

  int deg_y() const { return static_cast<int>(coeffs_in_x.size()) - 1; }
  RealPoly operator[](int k) const {
    return (k >= 0 && k <= deg_y()) ? coeffs_in_x[k] : RealPoly();
  }
};

YExpansion y_expand(const BivarPoly &p);
BivarPoly from_expansion(const YExpansion &e);

/// Determinants of the 2x2 system in (y^m0, y^v0) built from the two
/// highest retained y-terms of each equation.
struct EliminationTriple {
  BivarPoly D;  ///< alpha_m0 beta_v0 - alpha_v0 beta_m0 (y-free)
  BivarPoly D1; ///< alpha_v0 q2 - beta_v0 q1
  BivarPoly D2; ///< beta_m0 q1 - alpha_m0 q2
  int m0 = 0;
  int v0 = 0;
};

/// Builds D, D1, D2 for two expansions of equal top y-degree m0, where v0 is
/// the highest index below m0 present in either expansion and q1, q2 are the
/// parts below v0. Throws NotEliminable when no such v0 exists.
EliminationTriple cramer_triple(const YExpansion &e1, const YExpansion &e2,
                                const Tolerances &tol = {});

enum class ReductionBranch {
  cramer,       ///< D not identically zero: {D y^v0 - D2, D2 y^(m0-v0) - D1}
  singular,     ///< D == 0, D1 != 0: {p1, D1}
  proportional, ///< D == 0, D1 == 0: equations proportional, gradient in y
  gradient,     ///< one equation vanished: {F, dF/dy}
  monomial,     ///< an equation is alpha(x) y^k: solutions need alpha = 0
};

struct Reduction {
  BivarPoly q1;
  BivarPoly q2;
  /// Polynomials in x whose non-vanishing the equivalence of the new pair
  /// relies on. Their roots must be checked separately.
  std::vector<RealPoly> guards;
  std::vector<ReductionBranch> path;
};

/// Counts how often the gradient substitution has been used during one
/// solve; a second use means the finiteness assumption failed.
struct ReductionState {
  int gradient_entries = 0;
};

/// One elimination step: returns a pair with strictly smaller maximal
/// y-degree and the same real solutions away from y = 0 and the guards.
Reduction reduce_once(const BivarPoly &p1, const BivarPoly &p2, const Tolerances &tol,
                      ReductionState &state);
Reduction reduce_once(const BivarPoly &p1, const BivarPoly &p2, const Tolerances &tol = {});

struct SolutionPoint {
  double x = 0.0;
  double y = 0.0;
  double residual1 = 0.0;
  double residual2 = 0.0;
};

struct SolutionSet {
  std::vector<SolutionPoint> points;
};

struct SolveOptions {
  /// Upper bound on x-candidates; 0 selects 10 (deg_x + 1)(deg_y + 1).
  std::size_t candidate_cap = 0;
};

/// Real solutions of {p1 = 0, p2 = 0}, assumed finite.
SolutionSet solve_system(const BivarPoly &p1, const BivarPoly &p2,
                         const Tolerances &tol = {}, const SolveOptions &options = {});

} // namespace polyroots
