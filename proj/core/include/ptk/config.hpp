#pragma once

#include <string>

namespace ptk {

/// Tunable tolerances, node counts and caps shared by every module.
/// Defaults are the documented values; `apply_overrides` applies a JSON
/// object of field overrides (used for the PTK_DEFAULTS variable).
struct NumericConfig {
  // Gauss-Chebyshev quadrature
  int quad_min_nodes = 64;
  int quad_max_nodes = 1 << 16;
  double quad_rel_tol = 1e-13;

  // dense solve
  double solve_tol = 1e-10;
  double singular_pivot = 1e-300;

  // equilibrium
  int newton_max_iter = 60;
  double newton_tol = 1e-15;
  double endpoint_exclusion = 1e-12;
  double green_zero_clamp = 1e-9;

  // LP / extremal
  double lp_gap_tol = 1e-9;
  int lp_iter_factor = 10;
  int grid_factor = 32;
  int validation_factor = 4;
  double overshoot_tol = 1e-6;
  int max_degree = 120;

  // sets
  int cantor_level_cap = 12;

  static NumericConfig defaults() { return {}; }
};

/// Apply overrides from a JSON object string, e.g. {"grid_factor": 48}.
/// Unknown keys are rejected with InvalidInput.
NumericConfig apply_overrides(NumericConfig base, const std::string& json_text);

/// Defaults with the PTK_DEFAULTS environment variable applied when set.
NumericConfig config_from_environment();

}  // namespace ptk
