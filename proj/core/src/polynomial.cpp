#include "ptk/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptk/errors.hpp"

namespace ptk {

double cheb_T(int n, double x) {
  if (n < 0) throw InvalidInput("cheb_T: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double cheb_T_deriv(int n, double x) {
  if (n < 0) throw InvalidInput("cheb_T_deriv: negative degree");
  if (n == 0) return 0.0;
  double t_prev = 1.0, t_cur = x;  // T_{k-1}, T_k
  double d_prev = 0.0, d_cur = 1.0;
  for (int k = 1; k < n; ++k) {
    const double d_next = 2.0 * t_cur + 2.0 * x * d_cur - d_prev;
    const double t_next = 2.0 * x * t_cur - t_prev;
    t_prev = t_cur;
    t_cur = t_next;
    d_prev = d_cur;
    d_cur = d_next;
  }
  return d_cur;
}

double cheb_U(int n, double x) {
  if (n < 0) throw InvalidInput("cheb_U: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

MonicPoly MonicPoly::from_roots(std::span<const double> roots) {
  // coefficients of prod (t - r), lowest first, leading 1 implicit
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  c.pop_back();
  return MonicPoly(std::move(c));
}

double MonicPoly::operator()(double t) const {
  double v = 1.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * t + *it;
  return v;
}

ChebPoly::ChebPoly(double lo, double hi, std::vector<double> coeffs)
    : lo_(lo), hi_(hi), coeffs_(std::move(coeffs)) {
  if (!(lo < hi)) throw InvalidInput("ChebPoly: reference interval must satisfy lo < hi");
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

namespace {

double clenshaw(std::span<const double> c, double y) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b0 = c[k] + 2.0 * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + y * b1 - b2;
}

}  // namespace

double ChebPoly::operator()(double x) const {
  const double y = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  return clenshaw(coeffs_, y);
}

double ChebPoly::derivative(double x) const {
  const std::size_t n = coeffs_.size();
  if (n < 2) return 0.0;
  std::vector<double> d(n, 0.0);
  // d_{k-1} = d_{k+1} + 2k c_k, then d_0 is halved
  for (std::size_t k = n - 1; k >= 1; --k) {
    const double next = (k + 1 < n) ? d[k + 1] : 0.0;
    d[k - 1] = next + 2.0 * static_cast<double>(k) * coeffs_[k];
  }
  d[0] *= 0.5;
  const double y = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  return clenshaw(std::span<const double>(d.data(), n - 1), y) * 2.0 / (hi_ - lo_);
}

std::vector<double> ChebPoly::derivative_functional(double x) const {
  const double y = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  std::vector<double> r(coeffs_.size());
  for (std::size_t k = 0; k < r.size(); ++k)
    r[k] = cheb_T_deriv(static_cast<int>(k), y) * 2.0 / (hi_ - lo_);
  return r;
}

std::vector<double> ChebPoly::value_functional(double x) const {
  const double y = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  std::vector<double> r(coeffs_.size());
  if (r.empty()) return r;
  r[0] = 1.0;
  if (r.size() > 1) r[1] = y;
  for (std::size_t k = 2; k < r.size(); ++k) r[k] = 2.0 * y * r[k - 1] - r[k - 2];
  return r;
}

ChebPoly ChebPoly::from_values(double lo, double hi, std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> c(n, 0.0);
  const double nn = static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double theta = std::numbers::pi * (static_cast<double>(k) + 0.5) / nn;
      s += values[k] * std::cos(static_cast<double>(j) * theta);
    }
    c[j] = (j == 0 ? 1.0 : 2.0) * s / nn;
  }
  return ChebPoly(lo, hi, std::move(c));
}

BarycentricBasis::BarycentricBasis(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  const std::size_t n = nodes_.size();
  if (n == 0) throw InvalidInput("BarycentricBasis: no nodes");
  std::vector<double> logw(n, 0.0);
  std::vector<int> sign(n, 1);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const double d = nodes_[k] - nodes_[j];
      if (d == 0.0) throw InvalidInput("BarycentricBasis: repeated node");
      logw[k] -= std::log(std::abs(d));
      if (d < 0.0) sign[k] = -sign[k];
    }
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  weights_.resize(n);
  for (std::size_t k = 0; k < n; ++k) weights_[k] = sign[k] * std::exp(logw[k] - top);
}

void BarycentricBasis::row(double x, std::span<double> out) const {
  const std::size_t n = nodes_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (x == nodes_[k]) {
      std::fill(out.begin(), out.end(), 0.0);
      out[k] = 1.0;
      return;
    }
  }
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = weights_[k] / (x - nodes_[k]);
    s += out[k];
  }
  for (std::size_t k = 0; k < n; ++k) out[k] /= s;
}

void BarycentricBasis::derivative_row(double x, std::span<double> out) const {
  const std::size_t n = nodes_.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (x != nodes_[j]) continue;
    double diag = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      out[k] = (weights_[k] / weights_[j]) / (nodes_[j] - nodes_[k]);
      diag -= out[k];
    }
    out[j] = diag;
    return;
  }
  double s = 0.0, ds = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = weights_[k] / (x - nodes_[k]);
    s += t;
    ds -= t / (x - nodes_[k]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double t = weights_[k] / (x - nodes_[k]);
    out[k] = (-t / (x - nodes_[k])) / s - t * ds / (s * s);
  }
}

double BarycentricBasis::evaluate(std::span<const double> values, double x) const {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (x == nodes_[k]) return values[k];
    const double t = weights_[k] / (x - nodes_[k]);
    num += t * values[k];
    den += t;
  }
  return num / den;
}

double BarycentricBasis::derivative(std::span<const double> values, double x) const {
  std::vector<double> r(nodes_.size());
  derivative_row(x, r);
  double s = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) s += r[k] * values[k];
  return s;
}

}  // namespace ptk
