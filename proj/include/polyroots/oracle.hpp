#pragma once

#include <complex>
#include <vector>

#include "polyroots/polynomial.hpp"
#include "polyroots/tolerances.hpp"

// Independent root finders used to cross-check the main pipeline in tests.
// Nothing here is called by the library itself.
namespace polyroots::oracle {

struct OracleResult {
  std::vector<std::complex<double>> roots;
  bool converged = false;
  int iterations = 0;
};

/// Durand-Kerner (Weierstrass) simultaneous iteration.
OracleResult durand_kerner(const ComplexPoly &p, const Tolerances &tol = {});

/// cos(2 pi k / n) + i sin(2 pi k / n), k = 0..n-1.
std::vector<std::complex<double>> roots_of_unity(int n);

} // namespace polyroots::oracle
