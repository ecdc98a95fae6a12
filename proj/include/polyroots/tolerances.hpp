#pragma once

#include "polyroots/errors.hpp"

namespace polyroots {

/// Numerical thresholds shared by every stage.
///
/// `zero_eps` is relative: a coefficient counts as zero when its magnitude is
/// at most `zero_eps` times the largest coefficient magnitude.
struct Tolerances {
  double zero_eps = 1e-12;
  double root_tol = 1e-12;
  double cluster_tol = 1e-7;
  int max_iter = 500;
  /// |p(r)| <= residual_eps * scale(p, r) means "r is a root" inside the
  /// derivative chain and the multiplicity tests.
  double residual_eps = 1e-9;
  /// Acceptance threshold for reported roots and system solutions.
  double accept_eps = 1e-6;

  void validate() const {
    if (!(zero_eps > 0) || !(root_tol > 0) || !(cluster_tol > 0) ||
        !(residual_eps > 0) || !(accept_eps > 0) || max_iter < 1)
      throw InvalidInput("tolerances must be strictly positive and max_iter >= 1");
  }
};

} // namespace polyroots
