#include "polyroots/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace polyroots::oracle {

using cd = std::complex<double>;

OracleResult durand_kerner(const ComplexPoly &p_in, const Tolerances &tol) {
  const ComplexPoly p = p_in.normalized(tol.zero_eps);
  OracleResult result;
  const int n = p.degree();
  if (n < 1)
    return result;

  // Work with the monic polynomial; Fujiwara-style radius for the start circle.
  const ComplexPoly::Coefficients a = p.coeffs() / p.leading();
  double radius = 0.0;
  for (int k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(a(k)), 1.0 / (n - k)));
  radius = std::max(2.0 * radius, 1e-3);

  const auto monic = [&](const cd &z) {
    cd acc(1.0);
    for (int k = n - 1; k >= 0; --k)
      acc = acc * z + a(k);
    return acc;
  };

  std::vector<cd> z(n);
  const double offset = 0.4 + std::sqrt(2.0) * 1e-2;
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(radius * 0.5, offset + 2.0 * std::numbers::pi * k / n);

  for (int it = 1; it <= tol.max_iter; ++it) {
    double max_step = 0.0;
    for (int k = 0; k < n; ++k) {
      cd denom(1.0);
      for (int j = 0; j < n; ++j)
        if (j != k)
          denom *= z[k] - z[j];
      if (std::abs(denom) == 0.0)
        denom = cd(1e-300);
      const cd step = monic(z[k]) / denom;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    result.iterations = it;
    if (max_step < tol.root_tol) {
      result.converged = true;
      break;
    }
  }
  // Clustered roots can leave the step bouncing on rounding noise just above
  // root_tol. The iterate is still usable when every residual is tiny.
  if (!result.converged) {
    result.converged = std::all_of(z.begin(), z.end(), [&](const cd &r) {
      return std::abs(eval(p, r)) <= 1e-9 * scale(p, r);
    });
  }
  result.roots = std::move(z);
  return result;
}

std::vector<cd> roots_of_unity(int n) {
  if (n < 1)
    throw InvalidInput("roots_of_unity: n must be at least 1");
  std::vector<cd> out;
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    out.emplace_back(std::cos(angle), std::sin(angle));
  }
  return out;
}

} // namespace polyroots::oracle
