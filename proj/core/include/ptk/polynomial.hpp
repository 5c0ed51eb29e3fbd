#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace ptk {

/// Chebyshev polynomial of the first kind T_n(x), any real x.
double cheb_T(int n, double x);
/// Derivative T_n'(x), any real x.
double cheb_T_deriv(int n, double x);
/// Chebyshev polynomial of the second kind U_n(x) = T_{n+1}'(x)/(n+1).
double cheb_U(int n, double x);

/// Monic polynomial t^d + c_{d-1} t^{d-1} + ... + c_0.
class MonicPoly {
 public:
  MonicPoly() = default;  // the constant 1
  explicit MonicPoly(std::vector<double> lower_coeffs) : coeffs_(std::move(lower_coeffs)) {}
  static MonicPoly from_roots(std::span<const double> roots);

  int degree() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator()(double t) const;

 private:
  std::vector<double> coeffs_;
};

/// sum_k c_k T_k(y) with y the affine image of x from [lo, hi] onto [-1, 1].
class ChebPoly {
 public:
  ChebPoly(double lo, double hi, std::vector<double> coeffs);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  double operator()(double x) const;
  double derivative(double x) const;
  /// Row r with derivative(x) = sum_k r_k c_k.
  std::vector<double> derivative_functional(double x) const;
  /// Row r with value(x) = sum_k r_k c_k.
  std::vector<double> value_functional(double x) const;

  /// Interpolant of f at the degree+1 Chebyshev points of [lo, hi].
  template <class F>
  static ChebPoly interpolate(double lo, double hi, int degree, F&& f);

 private:
  static ChebPoly from_values(double lo, double hi, std::span<const double> values);

  double lo_;
  double hi_;
  std::vector<double> coeffs_;
};

/// Lagrange basis on arbitrary distinct nodes in barycentric form. Weights
/// are kept as scaled values so large node counts do not overflow.
class BarycentricBasis {
 public:
  explicit BarycentricBasis(std::vector<double> nodes);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }

  /// Values of all basis functions at x.
  void row(double x, std::span<double> out) const;
  /// Derivatives of all basis functions at x.
  void derivative_row(double x, std::span<double> out) const;
  /// Interpolant with the given nodal values, evaluated at x.
  double evaluate(std::span<const double> values, double x) const;
  double derivative(std::span<const double> values, double x) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

template <class F>
ChebPoly ChebPoly::interpolate(double lo, double hi, int degree, F&& f) {
  std::vector<double> values(static_cast<std::size_t>(degree) + 1);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double n = static_cast<double>(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double theta = std::numbers::pi * (static_cast<double>(k) + 0.5) / n;
    values[k] = f(mid + half * std::cos(theta));
  }
  return from_values(lo, hi, values);
}

}  // namespace ptk
