#pragma once

#include <string>
#include <vector>

#include "ptk/equilibrium.hpp"
#include "ptk/interval_set.hpp"
#include "ptk/polynomial.hpp"
#include "ptk/quadrature.hpp"

namespace ptk {

/// A polynomial T_N (N = 1 or 2) whose complete inverse image of [-1,1] is
/// `target`, with distinguished right endpoint a.
class InverseImageMap {
 public:
  /// T_1 mapping [lo, hi] onto [-1, 1]; a = hi.
  static InverseImageMap affine(double lo, double hi);
  /// T_2(x) = (2x^2 - 1 - alpha^2)/(1 - alpha^2), target [-1,-alpha] u [alpha,1], a = 1.
  static InverseImageMap quadratic(double alpha);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Monomial coefficients, lowest first.
  const std::vector<double>& coeffs() const { return coeffs_; }
  double alpha() const { return alpha_; }
  const IntervalSet& target() const { return target_; }
  double a() const { return a_; }

  double operator()(double x) const;
  double derivative(double x) const;
  /// |T_N'(a)|^{1/2} / (sqrt(2) pi N), the edge factor of the inverse image.
  double omega_at_a() const;

 private:
  InverseImageMap(std::vector<double> coeffs, double alpha, IntervalSet target, double a)
      : coeffs_(std::move(coeffs)), alpha_(alpha), target_(std::move(target)), a_(a) {}

  std::vector<double> coeffs_;
  double alpha_ = 0.0;
  IntervalSet target_;
  double a_ = 0.0;
};

InverseImageMap quadratic_inverse_image(double alpha);

/// H_m(w) = T_{m+1}'(w)/(m+1).
double h_poly(int m, double w);

/// ((x - c)/(a - c))^d with c the midpoint of [min K, a]; a must be max K.
ChebPoly peaking_poly(const IntervalSet& k, double a, int d);

/// P_n(x) = h_a H_m(T_N(x)) U(x) sqrt(2|T_N'(a)|)/(1+eta)^2 with
/// m = floor((n - sqrt n)/N) and U the peaking polynomial of degree floor(sqrt n).
class SchurWitness {
 public:
  int n() const { return n_; }
  int m() const { return m_; }
  double eta() const { return eta_; }
  double h_a() const { return h_a_; }
  int degree_bound() const;
  const InverseImageMap& map() const { return map_; }

  double operator()(double x) const;
  /// h_a (m+1) sqrt(2|T_N'(a)|)/(1+eta)^2, the exact value of |P_n(a)|.
  double value_at_a_closed_form() const;

 private:
  friend SchurWitness build_witness(const InverseImageMap&, double, int, double);
  SchurWitness(InverseImageMap map, double h_a, int n, double eta);

  InverseImageMap map_;
  double h_a_;
  int n_;
  double eta_;
  int m_;
  int peak_degree_;
  double scale_;
  ChebPoly peak_;
};

SchurWitness build_witness(const InverseImageMap& map, double h_a, int n, double eta = 0.05);

struct AuditReport {
  bool local_ok = true;
  double local_worst_margin = 0.0;  // max over grid of |P(x)| sqrt(a-x) / h(x)
  double growth_estimate = 0.0;     // (max_K |P|)^{1/n}
  double norm_ratio = 0.0;          // ||P||_[a-rho,a] / (n 2 pi h(a) Omega)
  double point_ratio = 0.0;         // |P(a)| / (n 2 pi h(a) Omega)
  double omega = 0.0;
  double h_a = 0.0;
  double norm_local = 0.0;
  double value_at_a = 0.0;
  double sup_on_k = 0.0;
  int n = 0;
  int local_grid_points = 0;
  int global_grid_per_interval = 0;
  std::string grid_note;
};

/// Checks the local hypothesis |P(x)| sqrt(a-x) <= h(x) on 2000 arccos-spaced
/// points of [a-rho, a), estimates the global growth on a 64*(n+1) point
/// arccos grid per component, and forms the two ratios against
/// n 2 pi h(a) Omega(K,a).
AuditReport audit_bound(const RealFunction& p, const RealFunction& h, const IntervalSet& k,
                        const EndpointContext& ctx, int n, const EquilibriumData& e);

/// P_n = T_{n+1}'/(n+1) on K = [-2,1], a = 1, rho = 1, h(x) = 1/sqrt(1+x).
AuditReport counterexample_demo(int n);

}  // namespace ptk
