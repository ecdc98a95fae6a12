#include "polyroots/complexroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyroots/realroots.hpp"

namespace polyroots {

using cd = std::complex<double>;

SplitPair split(const ComplexPoly &p) {
  if (p.is_zero())
    throw ZeroPolynomial("split: zero polynomial");
  const int n = p.degree();
  BivarPoly::Grid re = BivarPoly::Grid::Zero(n + 1, n + 1);
  BivarPoly::Grid im = BivarPoly::Grid::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    const double beta = p.coeffs()(k).real();
    const double gamma = p.coeffs()(k).imag();
    if (beta == 0.0 && gamma == 0.0)
      continue;
    // (x + iy)^k = sum_j C(k, j) x^(k-j) (iy)^j; i^j cycles 1, i, -1, -i.
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      const double sign = (j % 4 < 2) ? 1.0 : -1.0;
      const double c = sign * binom;
      if (j % 2 == 0) {
        re(k - j, j) += beta * c;
        im(k - j, j) += gamma * c;
      } else {
        im(k - j, j) += beta * c;
        re(k - j, j) -= gamma * c;
      }
      binom = binom * (k - j) / (j + 1);
    }
  }
  return {BivarPoly(std::move(re)), BivarPoly(std::move(im))};
}

namespace {

struct Refined {
  cd value;
  int multiplicity;
};

int multiplicity_or_zero(const ComplexPoly &p, const cd &r, const Tolerances &tol) {
  try {
    return multiplicity(p, r, tol);
  } catch (const NotARoot &) {
    return 0;
  }
}

// Newton steps are kept only while |d| keeps falling. Close to a multiple
// root d is mostly rounding noise and an unguarded step can throw the point
// far away.
cd newton(const ComplexPoly &d, cd r) {
  const ComplexPoly dd = derivative(d);
  double value = std::abs(eval(d, r));
  for (int it = 0; it < 100 && value > 0.0; ++it) {
    const cd slope = eval(dd, r);
    if (std::abs(slope) == 0.0)
      break;
    const cd step = eval(d, r) / slope;
    const cd next = r - step;
    const double next_value = std::abs(eval(d, next));
    if (!(next_value < value))
      break;
    r = next;
    value = next_value;
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(r)))
      break;
  }
  return r;
}

int taylor_zeros(const ComplexPoly &p, const cd &r, const Tolerances &tol) {
  try {
    return multiplicity_by_derivatives(p, r, tol);
  } catch (const NotARoot &) {
    return 0;
  }
}

// A root of multiplicity m is a simple root of p^(m-1), where Newton is
// quadratic again. Newton on p stalls near a multiple root, so the point is
// moved onto the nearby root of p^(m) and kept there while p and its first
// m derivatives all vanish at it.
Refined refine(const ComplexPoly &p, cd r, const Tolerances &tol) {
  cd c = newton(p, r);
  int m = 1;
  while (m < p.degree()) {
    const cd next = newton(derivative(p, m), c);
    if (std::abs(next - c) > 1e-3 * std::max(1.0, std::abs(c)) || taylor_zeros(p, next, tol) <= m)
      break;
    c = next;
    ++m;
  }
  // the count itself comes from repeated deflation at the polished point
  const int k = multiplicity_or_zero(p, c, tol);
  return {c, k == 0 ? m : k};
}

} // namespace

std::vector<ComplexRootReport> complex_roots(const ComplexPoly &p, const Tolerances &tol) {
  tol.validate();
  const ComplexPoly q = p.normalized(tol.zero_eps);
  if (q.is_zero())
    throw ZeroPolynomial("complex_roots: zero polynomial");
  if (q.degree() < 1)
    throw DegreeTooLow("complex_roots: polynomial must be non-constant");

  // Each round solves the split system of what is left, polishes the hits
  // against the original polynomial and divides the new roots out.
  std::vector<Refined> roots;
  int total = 0;
  ComplexPoly work = q;
  for (int round = 0; work.degree() >= 1 && round <= q.degree(); ++round) {
    const SplitPair parts = split(work);
    SolutionSet solutions;
    try {
      solutions = solve_system(parts.re_part, parts.im_part, tol);
    } catch (const InfiniteSolutions &e) {
      throw InfiniteSolutions(std::string("internal inconsistency: ") + e.what());
    }

    int added = 0;
    for (const SolutionPoint &pt : solutions.points) {
      // Polishing takes a genuine root to rounding level, so the stricter
      // residual_eps weeds out points that only looked small at Stage 2.
      Refined r = refine(q, cd(pt.x, pt.y), tol);
      if (!detail::near_zero(q, r.value, tol.residual_eps))
        continue;
      const bool known = std::any_of(roots.begin(), roots.end(), [&](const Refined &k) {
        return std::abs(k.value - r.value) <= tol.cluster_tol * std::max(1.0, std::abs(r.value));
      });
      if (known)
        continue;
      r.multiplicity = std::min(r.multiplicity, q.degree() - total);
      for (int k = 0; k < r.multiplicity && work.degree() >= 1; ++k)
        work = deflate(work, r.value).quotient;
      total += r.multiplicity;
      roots.push_back(r);
      ++added;
      if (total == q.degree())
        break;
    }
    if (added == 0)
      break;
  }
  if (total != q.degree())
    throw IncompleteRootSet("complex_roots: located " + std::to_string(total) + " of " +
                            std::to_string(q.degree()) + " roots");

  std::vector<ComplexRootReport> out;
  for (const Refined &r : roots)
    out.push_back({r.value, r.multiplicity, std::abs(eval(q, r.value))});
  std::sort(out.begin(), out.end(), [](const ComplexRootReport &a, const ComplexRootReport &b) {
    if (a.value.real() != b.value.real())
      return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

} // namespace polyroots
