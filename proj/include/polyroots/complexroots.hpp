#pragma once

#include <complex>
#include <vector>

#include "polyroots/bivariate.hpp"
#include "polyroots/polynomial.hpp"
#include "polyroots/tolerances.hpp"

namespace polyroots {

/// p(x + iy) = re_part(x, y) + i im_part(x, y).
struct SplitPair {
  BivarPoly re_part;
  BivarPoly im_part;
};

struct ComplexRootReport {
  std::complex<double> value;
  int multiplicity = 1;
  double residual = 0.0;
};

SplitPair split(const ComplexPoly &p);

/// All complex roots of p with multiplicities summing to deg p.
///
/// The roots are the real solutions of the split system, found by
/// solve_system. Multiplicities come from repeated deflation. When the
/// system solve misses part of the root set, the roots found so far are
/// divided out and the quotient is solved the same way.
std::vector<ComplexRootReport> complex_roots(const ComplexPoly &p, const Tolerances &tol = {});

} // namespace polyroots
