#include "ptk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ptk/errors.hpp"

namespace ptk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSeriesNodeCap = 8192;
// Relative size of the discarded tail; products over many gaps carry
// rounding noise near 1e-15, so a tighter value never terminates.
constexpr double kSeriesTailTol = 1e-13;

void check_interval(double u, double v, const char* who) {
  if (!(u < v) || !std::isfinite(u) || !std::isfinite(v))
    throw InvalidInput(std::string(who) + ": requires finite u < v");
}

}  // namespace

GaussChebyshevRule GaussChebyshevRule::make(double u, double v, int n) {
  check_interval(u, v, "GaussChebyshevRule");
  if (n < 1) throw InvalidInput("GaussChebyshevRule: need at least one node");
  GaussChebyshevRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  const double mid = 0.5 * (u + v);
  const double half = 0.5 * (v - u);
  for (int k = 1; k <= n; ++k)
    r.nodes[static_cast<std::size_t>(k - 1)] = mid + half * std::cos((2.0 * k - 1.0) * kPi / (2.0 * n));
  r.weight = kPi / n;
  return r;
}

double integrate_endpoint_singular(const RealFunction& f, double u, double v,
                                   const NumericConfig& cfg) {
  check_interval(u, v, "integrate_endpoint_singular");
  int n = cfg.quad_min_nodes;
  double prev = GaussChebyshevRule::make(u, v, n).apply(f);
  double before = prev;
  while (2 * n <= cfg.quad_max_nodes) {
    n *= 2;
    const auto rule = GaussChebyshevRule::make(u, v, n);
    double s = 0.0, mass = 0.0;
    for (double t : rule.nodes) {
      const double ft = f(t);
      s += ft;
      mass += std::abs(ft);
    }
    s *= rule.weight;
    mass *= rule.weight;
    if (!std::isfinite(s)) break;
    if (std::abs(s - prev) <= cfg.quad_rel_tol * std::max(std::abs(s), mass)) return s;
    before = prev;
    prev = s;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "integrate_endpoint_singular: no convergence on (" << u << ", " << v << ") at " << n
      << " nodes; last estimates " << before << ", " << prev;
  throw NumericalFailure(msg.str());
}

ChebyshevSeries ChebyshevSeries::fit_fixed(const RealFunction& f, double u, double v, int n) {
  check_interval(u, v, "ChebyshevSeries");
  ChebyshevSeries s;
  s.u_ = u;
  s.v_ = v;
  const double mid = 0.5 * (u + v);
  const double half = 0.5 * (v - u);
  const long long four_n = 4LL * n;
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k)
    vals[static_cast<std::size_t>(k - 1)] = f(mid + half * std::cos((2.0 * k - 1.0) * kPi / (2.0 * n)));
  // cos(j(2k-1)pi/(2n)) with exact integer argument reduction
  std::vector<double> table(static_cast<std::size_t>(four_n));
  for (long long i = 0; i < four_n; ++i)
    table[static_cast<std::size_t>(i)] = std::cos(kPi * static_cast<double>(i) / (2.0 * n));
  s.c_.assign(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k)
      acc += vals[static_cast<std::size_t>(k - 1)] *
             table[static_cast<std::size_t>((static_cast<long long>(j) * (2 * k - 1)) % four_n)];
    s.c_[static_cast<std::size_t>(j)] = (j == 0 ? 1.0 : 2.0) * acc / n;
  }
  return s;
}

ChebyshevSeries ChebyshevSeries::fit(const RealFunction& f, double u, double v,
                                     const NumericConfig& cfg) {
  int n = std::max(16, std::min(cfg.quad_min_nodes, 64));
  const int cap = std::min(cfg.quad_max_nodes, kSeriesNodeCap);
  while (true) {
    ChebyshevSeries s = fit_fixed(f, u, v, n);
    double top = 0.0;
    for (double c : s.c_) top = std::max(top, std::abs(c));
    if (!std::isfinite(top)) throw NumericalFailure("ChebyshevSeries: non-finite samples");
    double tail = 0.0;
    for (std::size_t j = s.c_.size() - s.c_.size() / 4; j < s.c_.size(); ++j)
      tail = std::max(tail, std::abs(s.c_[j]));
    if (tail <= kSeriesTailTol * top || top == 0.0) {
      // drop the negligible tail
      std::size_t keep = s.c_.size();
      while (keep > 1 && std::abs(s.c_[keep - 1]) <= 1e-17 * top) --keep;
      s.c_.resize(keep);
      return s;
    }
    if (2 * n > cap) {
      std::ostringstream msg;
      msg << "ChebyshevSeries: coefficients not resolved with " << n << " nodes (tail/top = "
          << tail / top << ")";
      throw NumericalFailure(msg.str());
    }
    n *= 2;
  }
}

double ChebyshevSeries::weighted_mass() const { return kPi * c_[0]; }

double ChebyshevSeries::log_moment(double x) const {
  const double mid = 0.5 * (u_ + v_);
  const double half = 0.5 * (v_ - u_);
  const double xi = (x - mid) / half;
  double result = kPi * c_[0] * std::log(half);
  if (std::abs(xi) <= 1.0) {
    // log|xi - y| = -log 2 - sum_k (2/k) T_k(xi) T_k(y)
    double sum = c_[0] * std::numbers::ln2;
    double t_prev = 1.0, t_cur = xi;
    for (std::size_t k = 1; k < c_.size(); ++k) {
      sum += c_[k] * t_cur / static_cast<double>(k);
      const double t_next = 2.0 * xi * t_cur - t_prev;
      t_prev = t_cur;
      t_cur = t_next;
    }
    return result - kPi * sum;
  }
  // log|xi - y| = log(w/2) - sum_k (2/k) w^{-k} T_k(sign(xi) y)
  const double ax = std::abs(xi);
  const double w = ax + std::sqrt((ax - 1.0) * (ax + 1.0));
  const double sgn = xi > 0.0 ? 1.0 : -1.0;
  result += kPi * c_[0] * std::log(0.5 * w);
  double sum = 0.0;
  double pw = 1.0;
  for (std::size_t k = 1; k < c_.size(); ++k) {
    pw *= sgn / w;
    if (pw == 0.0) break;
    sum += c_[k] * pw / static_cast<double>(k);
  }
  return result - kPi * sum;
}

double ChebyshevSeries::operator()(double t) const {
  const double y = (2.0 * t - u_ - v_) / (v_ - u_);
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c_.size(); k-- > 1;) {
    const double b0 = c_[k] + 2.0 * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c_[0] + y * b1 - b2;
}

}  // namespace ptk
