#pragma once

#include <vector>

#include "ptk/config.hpp"
#include "ptk/linalg.hpp"

namespace ptk {

/// maximize <objective, p>  subject to  |<constraints.row(i), p>| <= 1.
/// Rows are the basis functions evaluated at `points`; p are the polynomial
/// coefficients in that basis.
struct LPProblem {
  std::vector<double> objective;
  std::vector<double> points;
  Matrix constraints;
};

struct LPResult {
  double value = 0.0;
  std::vector<double> coeffs;
  std::vector<double> active;  // points with |P| >= 1 - 1e-9
  std::vector<std::size_t> reference;  // final reference, indices into points
  int iterations = 0;
  double max_violation = 0.0;  // of the unscaled final iterate
};

/// Dual simplex on  min ||y||_1  s.t.  sum_i y_i row_i = objective.
/// Starts from any nonsingular reference of dim points (`start`, or a spread
/// of the grid), exchanges one point per iteration, and stops once the
/// primal iterate violates no constraint by more than cfg.lp_gap_tol. The
/// returned coefficients are scaled onto the feasible set.
/// Throws NumericalFailure when the rows do not span the space (unbounded
/// relaxation) or after lp_iter_factor*(dim+1) exchanges.
LPResult lp_maximize(const LPProblem& problem, const NumericConfig& cfg = {},
                     const std::vector<std::size_t>& start = {});

}  // namespace ptk
