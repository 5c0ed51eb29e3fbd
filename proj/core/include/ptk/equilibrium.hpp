#pragma once

#include <utility>
#include <vector>

#include "ptk/config.hpp"
#include "ptk/interval_set.hpp"
#include "ptk/polynomial.hpp"
#include "ptk/quadrature.hpp"

namespace ptk {

/// Equilibrium measure of a finite union of non-degenerate intervals.
///
/// On the interior of K the density is
///     omega(t) = |q(t)| / (pi * sqrt(prod_j |t-a_j||t-b_j|)),
/// where q is monic of degree m-1 with exactly one root in every bounded gap,
/// fixed by requiring q/sqrt|R| to integrate to zero over each gap. The roots
/// are the unknowns of the solve and q is always evaluated in product form,
/// each root paired with the endpoints of its own gap.
class EquilibriumData {
 public:
  const IntervalSet& set() const { return set_; }
  /// Root of q in gap k (between intervals k and k+1).
  const std::vector<double>& gap_roots() const { return roots_; }
  /// q in monomial form. Exact for small m, only indicative for large m.
  MonicPoly q() const { return MonicPoly::from_roots(roots_); }
  double q_value(double t) const;
  double robin() const { return robin_; }
  /// nu_K of interval j.
  double component_mass(std::size_t j) const { return series_.at(j).weighted_mass(); }
  double cap() const { return cap_; }

  /// Equilibrium density at an interior point.
  double density(double t) const;
  /// omega(a - delta) * sqrt(delta) with the distance to a given exactly.
  double scaled_density_below(double a, double delta) const;
  /// Omega(K, a) for a right endpoint a.
  double omega_factor(double a) const;
  /// U(x) = integral of log(1/|x-t|) d nu(t), any real x.
  double potential(double x) const;
  /// Green's function with pole at infinity, real argument.
  double green(double z) const;
  /// Smooth part of the density on interval j, i.e. omega(t)*sqrt((t-a_j)(b_j-t)).
  double smooth_factor(std::size_t j, double t) const;

  /// Build from already known gap roots (used by deserialization); the
  /// Robin constant is recomputed.
  static EquilibriumData from_roots(IntervalSet k, std::vector<double> roots,
                                    const NumericConfig& cfg = {});

 private:
  friend EquilibriumData solve_equilibrium(const IntervalSet&, const NumericConfig&);
  EquilibriumData(IntervalSet k, std::vector<double> roots, const NumericConfig& cfg);

  // prod over gaps of (t - lambda_i)/sqrt(|t-b_i||t-a_{i+1}|), skipping `skip`.
  double paired_product(double t, std::size_t skip) const;

  IntervalSet set_;
  std::vector<double> roots_;
  std::vector<ChebyshevSeries> series_;
  NumericConfig cfg_;
  double robin_ = 0.0;
  double cap_ = 0.0;
};

/// Solves the gap conditions for q and computes the Robin constant and
/// capacity. Throws InvalidInput for degenerate intervals.
EquilibriumData solve_equilibrium(const IntervalSet& k, const NumericConfig& cfg = {});

/// The same polynomial obtained from the monomial moment system
///   sum_i c_i M_{k,i} = -M_{k,m-1},  M_{k,i} = int_{gap k} t^i / sqrt|R(t)| dt,
/// after mapping the hull of K onto [-1,1]. Well conditioned only for a
/// handful of intervals; kept as an independent route for cross-checks.
MonicPoly lambda_polynomial_by_moments(const IntervalSet& k, const NumericConfig& cfg = {});

double density(const EquilibriumData& e, double t);
double omega_factor(const EquilibriumData& e, double a);
double equilibrium_potential(const EquilibriumData& e, double x);
double capacity(const EquilibriumData& e);
double green(const EquilibriumData& e, double z);

/// Point mass at x swept onto [b, a].
struct BalayageQuery {
  double x = 0.0;
  double b = 0.0;
  double a = 0.0;

  /// Throws InvalidInput unless b < a and x lies outside [b - margin, a + margin].
  void validate(double margin = 0.0) const;
};

double balayage_density(const BalayageQuery& qy, double t);
/// Limit of balayage_density * sqrt(a - t) as t -> a.
double balayage_edge_limit(const BalayageQuery& qy);
/// Total mass of the swept measure (1 up to quadrature error).
double balayage_mass(const BalayageQuery& qy, const NumericConfig& cfg = {});

/// |omega_K(t) - (omega_[a-rho,a](t) - int_{K \ [a-rho,a]} Bal(delta_x; t) d nu_K(x))|.
double decomposition_residual(const EquilibriumData& e, const EndpointContext& ctx, double t,
                              const NumericConfig& cfg = {});
/// The sweep correction integral itself (non-negative).
double balayage_correction(const EquilibriumData& e, const EndpointContext& ctx, double t,
                           const NumericConfig& cfg = {});

struct EdgeSample {
  double offset;
  double scaled_density;  // omega(a - offset) * sqrt(offset)
};

std::vector<EdgeSample> edge_limit_profile(const EquilibriumData& e, double a,
                                           const std::vector<double>& offsets);

struct ConvergenceRow {
  int m;
  std::size_t intervals;  // component count of K_m^+
  double omega;
};

/// Omega(K_m^+, a) for each m; independent solves run concurrently.
std::vector<ConvergenceRow> outer_convergence_study(const IntervalSet& k,
                                                    const EndpointContext& ctx,
                                                    const std::vector<int>& m_list,
                                                    const NumericConfig& cfg = {});

}  // namespace ptk
