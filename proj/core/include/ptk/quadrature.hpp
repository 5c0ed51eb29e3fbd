#pragma once

#include <functional>
#include <vector>

#include "ptk/config.hpp"

namespace ptk {

using RealFunction = std::function<double(double)>;

/// N-point Gauss-Chebyshev rule for the weight 1/sqrt((t-u)(v-t)) on (u,v):
/// integral ~= (pi/N) * sum f(t_k), t_k = (u+v)/2 + (v-u)/2 cos((2k-1)pi/(2N)).
struct GaussChebyshevRule {
  std::vector<double> nodes;
  double weight = 0.0;

  static GaussChebyshevRule make(double u, double v, int n);

  template <class F>
  double apply(F&& f) const {
    double s = 0.0;
    for (double t : nodes) s += f(t);
    return weight * s;
  }
};

/// Integral of f(t)/sqrt((t-u)(v-t)) over (u,v). The node count doubles from
/// cfg.quad_min_nodes until successive estimates agree to cfg.quad_rel_tol
/// (measured against the larger of |I| and the absolute mass of f).
double integrate_endpoint_singular(const RealFunction& f, double u, double v,
                                   const NumericConfig& cfg = {});

/// Chebyshev expansion of a smooth factor f on [u,v], obtained from the
/// Gauss-Chebyshev nodes. Used to integrate f against the endpoint weight
/// times a logarithmic kernel in closed form.
class ChebyshevSeries {
 public:
  /// Adaptive: the node count doubles until the trailing coefficients are
  /// negligible relative to the largest.
  static ChebyshevSeries fit(const RealFunction& f, double u, double v,
                             const NumericConfig& cfg = {});
  static ChebyshevSeries fit_fixed(const RealFunction& f, double u, double v, int n);

  double lo() const { return u_; }
  double hi() const { return v_; }
  const std::vector<double>& coeffs() const { return c_; }

  /// Integral of f(t)/sqrt((t-u)(v-t)) dt.
  double weighted_mass() const;
  /// Integral of f(t) log|x-t| / sqrt((t-u)(v-t)) dt, valid for every real x.
  double log_moment(double x) const;
  /// The expanded function itself.
  double operator()(double t) const;

 private:
  double u_ = 0.0;
  double v_ = 0.0;
  std::vector<double> c_;
};

}  // namespace ptk
