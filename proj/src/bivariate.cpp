#include "polyroots/bivariate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "polyroots/realroots.hpp"

namespace polyroots {

namespace {

// a - b with entries that cancelled down to rounding noise flushed to zero.
BivarPoly combine(const BivarPoly &a, const BivarPoly &b, const Tolerances &tol) {
  const double magnitude = std::max(a.max_abs_coeff(), b.max_abs_coeff());
  BivarPoly::Grid g = (a - b).grid();
  const double threshold = tol.zero_eps * magnitude;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (std::abs(g.data()[i]) <= threshold)
      g.data()[i] = 0.0;
  return BivarPoly(std::move(g));
}

// Rescales to unit max-norm; the zero set is unchanged and repeated
// elimination stays clear of overflow.
BivarPoly unit(const BivarPoly &p, const Tolerances &tol) {
  const BivarPoly q = p.normalized(tol.zero_eps);
  if (q.is_zero())
    return q;
  return (1.0 / q.max_abs_coeff()) * q;
}

// Index of the only nonzero y-column, or -1.
int y_monomial_power(const BivarPoly &p) {
  int found = -1;
  for (int j = 0; j <= p.deg_y(); ++j) {
    if (!p.grid().col(j).isZero(0.0)) {
      if (found >= 0)
        return -1;
      found = j;
    }
  }
  return found;
}

BivarPoly lower_part(const YExpansion &e, int below) {
  BivarPoly out;
  for (int k = 0; k < below && k <= e.deg_y(); ++k)
    out = out + BivarPoly::in_x(e[k]).times_y_power(k);
  return out;
}

// Opposite strict signs at two sample points mean the zero set separates
// two open regions, so it cannot be finite.
bool takes_both_signs(const BivarPoly &f, const Tolerances &tol) {
  std::mt19937_64 rng(0x5eed5eedULL);
  const double radii[] = {0.5, 2.0, 8.0, 32.0};
  bool positive = false, negative = false;
  for (int i = 0; i < 1000; ++i) {
    std::uniform_real_distribution<double> u(-radii[i % 4], radii[i % 4]);
    const double x = u(rng), y = u(rng);
    const double v = f(x, y);
    const double threshold = tol.accept_eps * scale(f, x, y);
    positive = positive || v > threshold;
    negative = negative || v < -threshold;
    if (positive && negative)
      return true;
  }
  return false;
}

void enter_gradient(const BivarPoly &f, const Tolerances &tol, ReductionState &state) {
  if (++state.gradient_entries > 1)
    throw InfiniteSolutions(
        "eliminant vanished identically again after the gradient substitution");
  if (takes_both_signs(f, tol))
    throw InfiniteSolutions(
        "a single remaining equation takes both signs, so its zero set is a curve");
}

void push_guard(std::vector<RealPoly> &guards, const RealPoly &g) {
  if (g.degree() >= 1)
    guards.push_back(g);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

class Verifier {
public:
  Verifier(const BivarPoly &p1, const BivarPoly &p2, const Tolerances &tol)
      : p1_(p1), p2_(p2), p1x_(partial_x(p1)), p1y_(partial_y(p1)),
        p2x_(partial_x(p2)), p2y_(partial_y(p2)), p1xx_(partial_x(p1x_)),
        p1xy_(partial_y(p1x_)), p1yy_(partial_y(p1y_)), p2xx_(partial_x(p2x_)),
        p2xy_(partial_y(p2x_)), p2yy_(partial_y(p2y_)), tol_(tol) {}

  // True when p(x0, .) is numerically the zero polynomial.
  static bool vanishes(const RealPoly &s, const BivarPoly &p, double x0, const Tolerances &tol) {
    return s.max_abs_coeff() <= tol.accept_eps * scale(p, x0, 1.0);
  }

  void check_column(double x0) {
    const RealPoly s1 = p1_.specialize_x(x0);
    const RealPoly s2 = p2_.specialize_x(x0);
    const bool z1 = vanishes(s1, p1_, x0, tol_);
    const bool z2 = vanishes(s2, p2_, x0, tol_);
    if (z1 && z2)
      throw InfiniteSolutions("every point of the line x = " + format_double(x0) +
                              " solves the system (common factor in x)");
    if (!z1)
      try_roots_in_y(x0, s1);
    if (!z2)
      try_roots_in_y(x0, s2);
  }

  void try_point(double x, double y) {
    polish(x, y);
    if (accepted(x, y))
      points_.push_back({x, y, std::abs(p1_(x, y)), std::abs(p2_(x, y))});
  }

  SolutionSet finish() const {
    std::vector<std::pair<double, SolutionPoint>> sorted;
    for (const SolutionPoint &p : points_)
      sorted.emplace_back(weighted_residual(p.x, p.y), p);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    SolutionSet out;
    for (const auto &[residual, p] : sorted) {
      const bool duplicate =
          std::any_of(out.points.begin(), out.points.end(), [&](const SolutionPoint &q) {
            const double size = std::max({1.0, std::abs(q.x), std::abs(q.y)});
            return std::hypot(p.x - q.x, p.y - q.y) <= 10 * tol_.cluster_tol * size ||
                   connected(p, q);
          });
      if (!duplicate)
        out.points.push_back(p);
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const SolutionPoint &a, const SolutionPoint &b) {
                return a.x != b.x ? a.x < b.x : a.y < b.y;
              });
    return out;
  }

private:
  void try_roots_in_y(double x0, const RealPoly &s) {
    const RealPoly q = s.normalized(tol_.zero_eps);
    if (q.degree() < 1)
      return;
    const std::size_t before = points_.size();
    for (const RootReport &r : real_roots(q, tol_))
      try_point(x0, r.value);
    if (points_.size() > before)
      return;
    // An x-candidate off a multiple root of the eliminant can leave the
    // column just short of touching zero; its low points are still worth
    // polishing in both variables when they already pass as solutions.
    const RealPoly slope = derivative(q).normalized(tol_.zero_eps);
    if (slope.degree() >= 1)
      for (const RootReport &r : real_roots(slope, tol_))
        if (accepted(x0, r.value))
          try_point(x0, r.value);
  }

  bool accepted(double x, double y) const {
    return std::abs(p1_(x, y)) <= tol_.accept_eps * scale(p1_, x, y) &&
           std::abs(p2_(x, y)) <= tol_.accept_eps * scale(p2_, x, y);
  }

  // Near a touching solution the residual is small over a whole patch, so
  // candidates polished from different columns stop at different points of
  // it. Points joined by a segment that never leaves the accepted region
  // are one solution; distinct solutions have a residual barrier between.
  bool connected(const SolutionPoint &a, const SolutionPoint &b) const {
    constexpr int samples = 16;
    for (int k = 1; k < samples; ++k) {
      const double t = static_cast<double>(k) / samples;
      if (!accepted(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
        return false;
    }
    return true;
  }

  double weighted_residual(double x, double y) const {
    return std::hypot(p1_(x, y) / scale(p1_, x, y), p2_(x, y) / scale(p2_, x, y));
  }

  // Newton refinement on the 2x2 system; steps are kept only while they
  // reduce the residual. The minimum-norm solve copes with the rank-deficient
  // Jacobian of tangential solutions. There the rounded equations may only
  // touch down to a tiny positive minimum, which full steps overshoot, so a
  // rejected step is halved before giving up.
  void polish(double &x, double &y) const {
    double r = weighted_residual(x, y);
    const double floor = 8 * std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 60 && r > floor; ++it) {
      Eigen::Matrix2d jacobian;
      jacobian << p1x_(x, y), p1y_(x, y), p2x_(x, y), p2y_(x, y);
      const Eigen::Vector2d value(p1_(x, y), p2_(x, y));
      Eigen::Vector2d step = jacobian.completeOrthogonalDecomposition().solve(-value);
      if (!step.allFinite())
        break;
      bool moved = false;
      for (int half = 0; half < 8 && !moved; ++half, step *= 0.5) {
        const double nx = x + step(0), ny = y + step(1);
        const double nr = weighted_residual(nx, ny);
        if (nr < r) {
          x = nx;
          y = ny;
          r = nr;
          moved = true;
        }
      }
      if (!moved)
        break;
    }
    // A touching solution where one equation has a strict local extremum is
    // a critical point of that equation. Newton on its gradient converges
    // quadratically where the steps above only crawl.
    const double reach = std::sqrt(tol_.accept_eps) * std::max({1.0, std::abs(x), std::abs(y)});
    const BivarPoly *hessians[2][5] = {{&p1x_, &p1y_, &p1xx_, &p1xy_, &p1yy_},
                                       {&p2x_, &p2y_, &p2xx_, &p2xy_, &p2yy_}};
    for (const auto &h : hessians) {
      if (r <= floor)
        break;
      double cx = x, cy = y;
      double last = std::numeric_limits<double>::infinity();
      for (int it = 0; it < 30; ++it) {
        Eigen::Matrix2d hess;
        hess << (*h[2])(cx, cy), (*h[3])(cx, cy), (*h[3])(cx, cy), (*h[4])(cx, cy);
        const Eigen::Vector2d grad((*h[0])(cx, cy), (*h[1])(cx, cy));
        const Eigen::Vector2d step = hess.fullPivLu().solve(-grad);
        // converged steps shrink fast; once they stop, it is rounding noise
        if (!step.allFinite() || !(step.norm() < 0.5 * last))
          break;
        last = step.norm();
        cx += step(0);
        cy += step(1);
      }
      if (std::hypot(cx - x, cy - y) <= reach) {
        const double cr = weighted_residual(cx, cy);
        if (cr < r) {
          x = cx;
          y = cy;
          r = cr;
        }
      }
    }
  }

  const BivarPoly &p1_;
  const BivarPoly &p2_;
  BivarPoly p1x_, p1y_, p2x_, p2y_;
  BivarPoly p1xx_, p1xy_, p1yy_, p2xx_, p2xy_, p2yy_;
  const Tolerances &tol_;
  std::vector<SolutionPoint> points_;
};

} // namespace

YExpansion y_expand(const BivarPoly &p) {
  YExpansion e;
  for (int k = 0; k <= p.deg_y(); ++k)
    e.coeffs_in_x.push_back(p.y_coefficient(k));
  return e;
}

BivarPoly from_expansion(const YExpansion &e) { return lower_part(e, e.deg_y() + 1); }

EliminationTriple cramer_triple(const YExpansion &e1, const YExpansion &e2,
                                const Tolerances &tol) {
  const int m0 = std::max(e1.deg_y(), e2.deg_y());
  if (m0 < 1)
    throw NotEliminable("cramer_triple: both equations are free of y");
  int v0 = -1;
  for (int k = m0 - 1; k >= 0 && v0 < 0; --k)
    if (!e1[k].is_zero() || !e2[k].is_zero())
      v0 = k;
  if (v0 < 0)
    throw NotEliminable("cramer_triple: no second retained y-term");

  const BivarPoly am = BivarPoly::in_x(e1[m0]), av = BivarPoly::in_x(e1[v0]);
  const BivarPoly bm = BivarPoly::in_x(e2[m0]), bv = BivarPoly::in_x(e2[v0]);
  const BivarPoly q1 = lower_part(e1, v0), q2 = lower_part(e2, v0);

  EliminationTriple t;
  t.m0 = m0;
  t.v0 = v0;
  t.D = combine(am * bv, av * bm, tol);
  t.D1 = combine(av * q2, bv * q1, tol);
  t.D2 = combine(bm * q1, am * q2, tol);
  return t;
}

Reduction reduce_once(const BivarPoly &p1, const BivarPoly &p2, const Tolerances &tol) {
  ReductionState state;
  return reduce_once(p1, p2, tol, state);
}

Reduction reduce_once(const BivarPoly &p1, const BivarPoly &p2, const Tolerances &tol,
                      ReductionState &state) {
  BivarPoly a = unit(p1, tol), b = unit(p2, tol);
  const int m0 = std::max(a.deg_y(), b.deg_y());
  if (m0 < 1)
    throw NotEliminable("reduce_once: both equations are free of y");

  Reduction out;
  // The singular and gradient branches keep the top degree for a step; the
  // loop continues until it drops below m0.
  for (int guard = 0; std::max(a.deg_y(), b.deg_y()) >= m0; ++guard) {
    if (guard > 4 * m0 + 8)
      throw Error("reduce_once: elimination failed to lower the y-degree");

    if (a.is_zero() || b.is_zero()) {
      const BivarPoly f = a.is_zero() ? b : a;
      const int k = y_monomial_power(f);
      if (k >= 1) {
        // f = alpha(x) y^k: away from y = 0 the solutions need alpha = 0.
        out.path.push_back(ReductionBranch::monomial);
        a = BivarPoly::in_x(f.y_coefficient(k));
        b = BivarPoly();
        continue;
      }
      out.path.push_back(ReductionBranch::gradient);
      enter_gradient(f, tol, state);
      a = f;
      b = unit(partial_y(f), tol);
      continue;
    }

    if (a.deg_y() < b.deg_y())
      a = a.times_y_power(b.deg_y() - a.deg_y());
    else if (b.deg_y() < a.deg_y())
      b = b.times_y_power(a.deg_y() - b.deg_y());

    const int m = a.deg_y();
    const RealPoly am = a.y_coefficient(m), bm = b.y_coefficient(m);
    const bool a_mono = y_monomial_power(a) >= 0, b_mono = y_monomial_power(b) >= 0;
    if (a_mono || b_mono) {
      // Cross-multiplication removes the top term; the monomial equation
      // itself only contributes its coefficient.
      out.path.push_back(ReductionBranch::monomial);
      const BivarPoly cross = combine(am * b, bm * a, tol);
      a = BivarPoly::in_x(a_mono ? am : bm);
      b = unit(cross, tol);
      continue;
    }

    const EliminationTriple t = cramer_triple(y_expand(a), y_expand(b), tol);
    push_guard(out.guards, am);
    push_guard(out.guards, bm);
    push_guard(out.guards, a.y_coefficient(t.v0));
    push_guard(out.guards, b.y_coefficient(t.v0));

    if (!t.D.is_zero()) {
      out.path.push_back(ReductionBranch::cramer);
      push_guard(out.guards, t.D.y_coefficient(0));
      const BivarPoly next_a = combine(t.D.times_y_power(t.v0), t.D2, tol);
      const BivarPoly next_b = combine(t.D2.times_y_power(t.m0 - t.v0), t.D1, tol);
      a = unit(next_a, tol);
      b = unit(next_b, tol);
    } else if (!t.D1.is_zero()) {
      out.path.push_back(ReductionBranch::singular);
      b = unit(t.D1, tol);
    } else {
      out.path.push_back(ReductionBranch::proportional);
      enter_gradient(a, tol, state);
      b = unit(partial_y(a), tol);
    }
  }
  out.q1 = a;
  out.q2 = b;
  return out;
}

SolutionSet solve_system(const BivarPoly &p1_in, const BivarPoly &p2_in, const Tolerances &tol,
                         const SolveOptions &options) {
  tol.validate();
  const BivarPoly p1 = p1_in.normalized(tol.zero_eps);
  const BivarPoly p2 = p2_in.normalized(tol.zero_eps);
  if (p1.is_zero() && p2.is_zero())
    throw BothZero("solve_system: both equations are identically zero");

  const auto is_nonzero_constant = [](const BivarPoly &p) {
    return !p.is_zero() && p.deg_x() == 0 && p.deg_y() == 0;
  };
  if (is_nonzero_constant(p1) || is_nonzero_constant(p2))
    return {};

  const int dx = std::max(p1.deg_x(), p2.deg_x());
  const int dy = std::max(p1.deg_y(), p2.deg_y());
  const std::size_t cap = options.candidate_cap
                              ? options.candidate_cap
                              : static_cast<std::size_t>(10 * (dx + 1) * (dy + 1));

  Verifier verifier(p1, p2, tol);
  std::vector<double> xs;
  const auto add_roots = [&](const RealPoly &r) {
    const RealPoly q = r.normalized(tol.zero_eps);
    if (q.degree() < 1)
      return;
    for (const RootReport &root : real_roots(q, tol))
      xs.push_back(root.value);
  };

  bool direct = false;
  for (const BivarPoly *p : {&p1, &p2}) {
    if (p->is_zero())
      continue;
    if (p->deg_y() == 0) {
      add_roots(p->y_coefficient(0));
      direct = true;
    } else if (p->deg_x() == 0) {
      const BivarPoly &other = (p == &p1) ? p2 : p1;
      for (const RootReport &ry : real_roots(p->x_coefficient(0), tol)) {
        const RealPoly s = other.specialize_y(ry.value);
        if (s.max_abs_coeff() <= tol.accept_eps * scale(other, 1.0, ry.value))
          throw InfiniteSolutions("every point of the line y = " + format_double(ry.value) +
                                  " solves the system (common factor in y)");
        const RealPoly q = s.normalized(tol.zero_eps);
        if (q.degree() < 1)
          continue;
        for (const RootReport &rx : real_roots(q, tol))
          verifier.try_point(rx.value, ry.value);
      }
      direct = true;
    }
  }

  if (!direct) {
    // Eliminate y until one equation is free of y or is a y-monomial; every
    // guard polynomial met on the way contributes its roots as well.
    BivarPoly a = p1, b = p2;
    ReductionState state;
    const int max_steps = p1.deg_y() + p2.deg_y() + 2;
    for (int steps = 0;; ++steps) {
      bool terminal = false;
      for (const BivarPoly *p : {&a, &b}) {
        if (p->is_zero())
          continue;
        const int k = y_monomial_power(*p);
        if (k >= 0) {
          add_roots(p->y_coefficient(k));
          terminal = true;
        }
      }
      if (terminal)
        break;
      if (steps > max_steps)
        throw Error("solve_system: elimination did not terminate");
      const Reduction r = reduce_once(a, b, tol, state);
      for (const RealPoly &g : r.guards)
        add_roots(g);
      a = r.q1;
      b = r.q2;
    }

    // Degree equalization multiplies by powers of y, so solutions on y = 0
    // are taken from the original equations.
    const RealPoly r1 = p1.specialize_y(0.0), r2 = p2.specialize_y(0.0);
    const bool z1 = r1.max_abs_coeff() <= tol.accept_eps * p1.max_abs_coeff();
    const bool z2 = r2.max_abs_coeff() <= tol.accept_eps * p2.max_abs_coeff();
    if (z1 && z2)
      throw InfiniteSolutions("every point of the line y = 0 solves the system");
    if (!z1)
      add_roots(r1);
    if (!z2)
      add_roots(r2);
  }

  std::sort(xs.begin(), xs.end());
  std::vector<double> distinct;
  for (double x : xs)
    if (distinct.empty() || x - distinct.back() > tol.cluster_tol * std::max(1.0, std::abs(x)))
      distinct.push_back(x);
  if (distinct.size() > cap)
    throw CandidateOverflow("solve_system: " + std::to_string(distinct.size()) +
                            " x-candidates exceed the cap of " + std::to_string(cap));

  for (double x0 : distinct)
    verifier.check_column(x0);
  return verifier.finish();
}

} // namespace polyroots
