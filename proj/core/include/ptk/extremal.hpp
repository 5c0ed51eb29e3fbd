#pragma once

#include <memory>
#include <vector>

#include "ptk/config.hpp"
#include "ptk/equilibrium.hpp"
#include "ptk/interval_set.hpp"
#include "ptk/polynomial.hpp"

namespace ptk {

/// Extremal polynomial for max P'(a) subject to |P| <= 1 on a grid of K,
/// stored by its values at the barycentric nodes.
struct ExtremalResult {
  int degree = 0;
  double value = 0.0;  // optimal |P'(a)|, witness already normalized
  double ratio = 0.0;  // value / degree^2
  std::vector<double> nodes;
  std::vector<double> nodal_values;
  std::vector<double> active_points;
  double validation_max = 0.0;  // max |P| on the validation grid
  std::size_t grid_points = 0;
  int lp_iterations = 0;
  std::shared_ptr<const BarycentricBasis> basis;

  double operator()(double x) const;
  double derivative(double x) const;
  /// The witness in the Chebyshev basis of [lo, hi]; exact up to rounding
  /// since the degree is preserved.
  ChebPoly to_chebyshev(double lo, double hi) const;
};

struct MarkovStudy {
  IntervalSet set;
  double a = 0.0;
  std::vector<ExtremalResult> rows;
  double limit_constant = 0.0;  // 2 pi^2 Omega(K,a)^2
  std::vector<int> flagged;      // degrees >= 10 with ratio > 1.02 * limit

  bool ok() const { return flagged.empty(); }
};

/// Arccos-spaced grid: `per_interval` points per non-degenerate component,
/// endpoints included.
std::vector<double> arccos_grid(const IntervalSet& k, int per_interval);

/// Solves the grid LP for degree n (1 <= n <= cfg.max_degree). The grid has
/// cfg.grid_factor*(n+1) points per component; if the witness overshoots by
/// more than cfg.overshoot_tol on a cfg.validation_factor finer grid the
/// grid is doubled once, then NumericalFailure.
ExtremalResult markov_extremal(const IntervalSet& k, double a, int n,
                               const NumericConfig& cfg = {});
/// Variant reusing an existing equilibrium solve for node placement.
ExtremalResult markov_extremal(const EquilibriumData& e, double a, int n,
                               const NumericConfig& cfg = {});

/// Maximum over `targets` of the pointwise extremal value, i.e. the norm
/// variant max_{x in targets} max |P'(x)| of the same LP.
ExtremalResult markov_extremal_norm(const EquilibriumData& e, double a, int n,
                                    const std::vector<double>& targets,
                                    const NumericConfig& cfg = {});

/// Per-degree extremal values plus the limit constant; degrees run
/// concurrently and are merged in order.
MarkovStudy markov_study(const IntervalSet& k, double a, const std::vector<int>& degrees,
                         const NumericConfig& cfg = {});

/// sup norm of P over K on an arccos grid of `per_interval` points per component.
double grid_norm(const IntervalSet& k, const RealFunction& p, int per_interval);

/// max over probes of |P'(x)| / (n pi omega_K(x) ||P||_K).
double bernstein_audit(const EquilibriumData& e, const ChebPoly& p, const std::vector<double>& probes);

/// |P(z)| / (||P||_K exp(n g_K(z))).
double bernstein_walsh_audit(const EquilibriumData& e, const ChebPoly& p, double z);

}  // namespace ptk
