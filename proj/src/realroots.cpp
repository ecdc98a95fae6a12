#include "polyroots/realroots.hpp"

#include <algorithm>
#include <cmath>

namespace polyroots {

namespace {

struct Bracketed {
  double lo;
  double hi;
  double root;
};

int sign(double v) { return (v > 0) - (v < 0); }

Bracketed bisect_bracket(const std::function<double(double)> &f, double lo,
                         double hi, const Tolerances &tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (!(lo < hi) || !(flo * fhi < 0))
    throw NoSignChange("bisect: f(lo) and f(hi) must have strictly opposite signs");

  for (int it = 0; it < tol.max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (hi - lo <= tol.root_tol || mid <= lo || mid >= hi)
      return {lo, hi, mid};
    const double fmid = f(mid);
    if (fmid == 0.0)
      return {mid, mid, mid};
    if (sign(fmid) == sign(flo)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo <= tol.root_tol)
    return {lo, hi, lo + 0.5 * (hi - lo)};
  throw MaxIterExceeded("bisect: interval did not shrink to root_tol within max_iter");
}

int safe_multiplicity(const RealPoly &p, double r, const Tolerances &tol, bool wanted = true) {
  if (!wanted)
    return 1;
  try {
    return multiplicity_by_derivatives(p, r, tol);
  } catch (const NotARoot &) {
    return 1;
  }
}

// Merges roots closer than cluster_tol; multiplicity is recomputed at the
// merged value.
std::vector<RootReport> cluster(std::vector<RootReport> roots, const RealPoly &p,
                                const Tolerances &tol, bool with_multiplicity) {
  std::sort(roots.begin(), roots.end(),
            [](const RootReport &a, const RootReport &b) { return a.value < b.value; });
  std::vector<RootReport> merged;
  for (std::size_t i = 0; i < roots.size();) {
    std::size_t j = i + 1;
    double sum = roots[i].value;
    while (j < roots.size() && roots[j].value - roots[j - 1].value <= tol.cluster_tol)
      sum += roots[j++].value;
    if (j - i == 1) {
      merged.push_back(roots[i]);
    } else {
      RootReport r;
      r.value = sum / static_cast<double>(j - i);
      r.multiplicity = safe_multiplicity(p, r.value, tol, with_multiplicity);
      merged.push_back(r);
    }
    i = j;
  }
  return merged;
}

} // namespace

double bisect(const std::function<double(double)> &f, double lo, double hi,
              const Tolerances &tol) {
  return bisect_bracket(f, lo, hi, tol).root;
}

std::vector<RootReport> closed_form_roots(const RealPoly &p, const Tolerances &tol) {
  const RealPoly q = p.normalized(tol.zero_eps);
  if (q.degree() < 1)
    throw DegreeTooLow("closed_form_roots: degree must be 1 or 2");
  if (q.degree() > 2)
    throw DegreeTooHigh("closed_form_roots: degree must be 1 or 2");

  std::vector<RootReport> out;
  if (q.degree() == 1) {
    const double r = -q[0] / q[1];
    out.push_back({r, std::nullopt, 1, std::abs(p(r))});
    return out;
  }

  const double a = q[2], b = q[1], c = q[0];
  // A vertex at which q is numerically zero is a double root, judged by the
  // same residual rule the derivative chain applies to critical points.
  const double vertex = -b / (2 * a);
  if (detail::near_zero(q, vertex, tol.residual_eps)) {
    out.push_back({vertex, std::nullopt, 2, std::abs(p(vertex))});
    return out;
  }
  const double disc = b * b - 4 * a * c;
  if (disc < 0)
    return out;
  const double t = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1 = t / a;
  double r2 = (t != 0.0) ? c / t : -r1;
  if (r1 > r2)
    std::swap(r1, r2);
  out.push_back({r1, std::nullopt, 1, std::abs(p(r1))});
  out.push_back({r2, std::nullopt, 1, std::abs(p(r2))});
  return out;
}

namespace {

// Critical points only need their locations, so the recursion skips the
// multiplicity pass.
std::vector<RootReport> real_roots_impl(const RealPoly &p, const Tolerances &tol,
                                        bool with_multiplicity) {
  const RealPoly q = p.normalized(tol.zero_eps);
  if (q.degree() < 1)
    throw DegreeTooLow("real_roots: polynomial must be non-constant");
  if (q.degree() <= 2)
    return closed_form_roots(q, tol);

  std::vector<double> points;
  const RealPoly slope = derivative(q).normalized(tol.zero_eps);
  if (slope.degree() >= 1)
    for (const RootReport &c : real_roots_impl(slope, tol, false))
      points.push_back(c.value);

  const double bound = root_bound(q);
  double lo = -bound, hi = bound;
  if (!points.empty()) {
    lo = std::min(lo, points.front() - 1.0);
    hi = std::max(hi, points.back() + 1.0);
  }
  const std::size_t n_crit = points.size();
  points.insert(points.begin(), lo);
  points.push_back(hi);

  const auto f = [&q](double x) { return q(x); };
  std::vector<double> values(points.size());
  std::vector<bool> is_root(points.size(), false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    values[i] = f(points[i]);
    const bool interior = i > 0 && i <= n_crit;
    is_root[i] = interior && detail::near_zero(q, points[i], tol.residual_eps);
  }
  // A near-zero critical value next to a neighbour of the other sign may
  // still sit between two close simple roots. Perturbing a double root's
  // coefficients by accept_eps splits it by about sqrt(accept_eps); q is
  // monotone on each side of c, so one sample per side tells whether the
  // root there lies further out than that.
  for (std::size_t i = 1; i <= n_crit; ++i) {
    if (!is_root[i] || values[i] == 0.0)
      continue;
    const double reach = 0.5 * std::sqrt(tol.accept_eps) * std::max(1.0, std::abs(points[i]));
    for (const std::size_t j : {i - 1, i + 1}) {
      const double probe = points[i] + (j < i ? -reach : reach);
      const bool inside = j < i ? probe > points[j] : probe < points[j];
      if (values[i] * values[j] < 0 && inside && f(probe) * values[i] > 0)
        is_root[i] = false;
    }
  }

  std::vector<RootReport> roots;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (is_root[i])
      roots.push_back({points[i], std::nullopt, 0, 0.0});
  }
  // q is strictly monotone between consecutive critical points, so a sign
  // change brackets exactly one root. An endpoint that is itself a root
  // rules out a second one inside the interval.
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (is_root[i] || is_root[i + 1] || !(values[i] * values[i + 1] < 0))
      continue;
    const Bracketed b = bisect_bracket(f, points[i], points[i + 1], tol);
    // q' has no zero strictly between critical points, so a root clear of
    // both ends is simple whatever the derivative test would make of it
    const double reach = std::sqrt(tol.accept_eps) * std::max(1.0, std::abs(b.root));
    const bool clear = (i == 0 || b.root - points[i] > reach) &&
                       (i + 1 > n_crit || points[i + 1] - b.root > reach);
    roots.push_back({b.root, std::make_pair(b.lo, b.hi), clear ? 1 : 0, 0.0});
  }

  for (RootReport &r : roots)
    if (r.multiplicity == 0)
      r.multiplicity = safe_multiplicity(q, r.value, tol, with_multiplicity);
  roots = cluster(std::move(roots), q, tol, with_multiplicity);
  for (RootReport &r : roots)
    r.residual = std::abs(p(r.value));
  return roots;
}

} // namespace

std::vector<RootReport> real_roots(const RealPoly &p, const Tolerances &tol) {
  tol.validate();
  return real_roots_impl(p, tol, true);
}

double nth_root(double a, int n, const Tolerances &tol) {
  if (!(a > 0) || n < 2)
    throw InvalidInput("nth_root: requires a > 0 and n >= 2");
  if (a == 1.0)
    return 1.0;
  const auto f = [a, n](double x) {
    double power = 1.0;
    for (int i = 0; i < n; ++i)
      power *= x;
    return power - a;
  };
  return a > 1.0 ? bisect(f, 1.0, a, tol) : bisect(f, 0.0, 1.0, tol);
}

} // namespace polyroots
