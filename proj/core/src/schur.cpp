#include "ptk/schur.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptk/errors.hpp"
#include "ptk/extremal.hpp"

namespace ptk {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

InverseImageMap InverseImageMap::affine(double lo, double hi) {
  if (!(lo < hi)) throw InvalidInput("affine inverse image: requires lo < hi");
  const std::vector<std::pair<double, double>> iv{{lo, hi}};
  return InverseImageMap({-(lo + hi) / (hi - lo), 2.0 / (hi - lo)}, 0.0, IntervalSet::normalize(iv), hi);
}

InverseImageMap InverseImageMap::quadratic(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("quadratic inverse image: alpha must lie in (0, 1)");
  const double den = 1.0 - alpha * alpha;
  const std::vector<std::pair<double, double>> iv{{-1.0, -alpha}, {alpha, 1.0}};
  return InverseImageMap({(-1.0 - alpha * alpha) / den, 0.0, 2.0 / den}, alpha,
                         IntervalSet::normalize(iv), 1.0);
}

double InverseImageMap::operator()(double x) const {
  double v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

double InverseImageMap::derivative(double x) const {
  double v = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 1;) v = v * x + static_cast<double>(i) * coeffs_[i];
  return v;
}

double InverseImageMap::omega_at_a() const {
  return std::sqrt(std::abs(derivative(a_))) / (std::numbers::sqrt2 * kPi * degree());
}

InverseImageMap quadratic_inverse_image(double alpha) { return InverseImageMap::quadratic(alpha); }

double h_poly(int m, double w) {
  if (m < 0) throw InvalidInput("h_poly: m must be non-negative");
  return cheb_U(m, w);
}

ChebPoly peaking_poly(const IntervalSet& k, double a, int d) {
  if (d < 0) throw InvalidInput("peaking_poly: negative degree");
  if (k.max() != a) throw InvalidInput("peaking_poly: a must be the maximum of K");
  if (!(k.min() < a)) throw InvalidInput("peaking_poly: K is a single point");
  // ((x-c)/(a-c))^d is y^d for the affine map of [min K, a] onto [-1,1]:
  // y^d = 2^{1-d} sum_k C(d,k) T_{d-2k}(y), middle term halved.
  std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
  if (d == 0) {
    c[0] = 1.0;
  } else {
    for (int j = 0; 2 * j <= d; ++j) {
      const double log_binom = std::lgamma(d + 1.0) - std::lgamma(j + 1.0) - std::lgamma(d - j + 1.0);
      double v = std::exp(log_binom + (1.0 - d) * std::numbers::ln2);
      if (2 * j == d) v *= 0.5;
      c[static_cast<std::size_t>(d - 2 * j)] = v;
    }
  }
  return ChebPoly(k.min(), a, std::move(c));
}

SchurWitness::SchurWitness(InverseImageMap map, double h_a, int n, double eta)
    : map_(std::move(map)),
      h_a_(h_a),
      n_(n),
      eta_(eta),
      m_(static_cast<int>(std::floor((n - std::sqrt(static_cast<double>(n))) / map_.degree()))),
      peak_degree_(static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))))),
      scale_(h_a * std::sqrt(2.0 * std::abs(map_.derivative(map_.a()))) / ((1.0 + eta) * (1.0 + eta))),
      peak_(peaking_poly(map_.target(), map_.a(), peak_degree_)) {}

int SchurWitness::degree_bound() const { return map_.degree() * m_ + peak_degree_; }

double SchurWitness::operator()(double x) const {
  return scale_ * h_poly(m_, map_(x)) * peak_(x);
}

double SchurWitness::value_at_a_closed_form() const { return scale_ * (m_ + 1); }

SchurWitness build_witness(const InverseImageMap& map, double h_a, int n, double eta) {
  if (n < 16) throw InvalidInput("build_witness: n must be at least 16");
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidInput("build_witness: eta must lie in (0, 1]");
  if (!(h_a > 0.0)) throw InvalidInput("build_witness: h(a) must be positive");
  return SchurWitness(map, h_a, n, eta);
}

AuditReport audit_bound(const RealFunction& p, const RealFunction& h, const IntervalSet& k,
                        const EndpointContext& ctx, int n, const EquilibriumData& e) {
  if (n < 1) throw InvalidInput("audit_bound: n must be positive");
  constexpr int kLocalPoints = 2000;
  AuditReport r;
  r.n = n;
  r.local_grid_points = kLocalPoints;
  r.global_grid_per_interval = 64 * (n + 1);
  r.grid_note = "local: 2000 arccos-spaced points of [a-rho, a); global: 64(n+1) arccos-spaced "
                "points per component of K (a lower bound for the sup norm)";
  const double a = ctx.a, lo = ctx.a - ctx.rho;
  const double mid = 0.5 * (lo + a), half = 0.5 * ctx.rho;
  r.local_ok = true;
  r.local_worst_margin = 0.0;
  for (int i = 0; i < kLocalPoints; ++i) {
    double x = mid - half * std::cos(kPi * i / kLocalPoints);
    if (i == 0) x = lo;
    const double lhs = std::abs(p(x)) * std::sqrt(a - x);
    const double hx = h(x);
    r.local_worst_margin = std::max(r.local_worst_margin, lhs / hx);
    if (lhs > hx * (1.0 + 1e-9)) r.local_ok = false;
    r.norm_local = std::max(r.norm_local, std::abs(p(x)));
  }
  r.value_at_a = std::abs(p(a));
  r.norm_local = std::max(r.norm_local, r.value_at_a);
  r.sup_on_k = grid_norm(k, p, r.global_grid_per_interval);
  r.growth_estimate = std::pow(r.sup_on_k, 1.0 / n);
  r.omega = e.omega_factor(a);
  r.h_a = h(a);
  const double threshold = n * 2.0 * kPi * r.h_a * r.omega;
  r.norm_ratio = r.norm_local / threshold;
  r.point_ratio = r.value_at_a / threshold;
  return r;
}

AuditReport counterexample_demo(int n) {
  if (n < 1) throw InvalidInput("counterexample_demo: n must be positive");
  const std::vector<std::pair<double, double>> iv{{-2.0, 1.0}};
  const IntervalSet k = IntervalSet::normalize(iv);
  const EndpointContext ctx = check_interval_condition(k, 1.0, 1.0);
  const EquilibriumData e = solve_equilibrium(k);
  return audit_bound([n](double x) { return cheb_U(n, x); },
                     [](double x) { return 1.0 / std::sqrt(1.0 + x); }, k, ctx, n, e);
}

}  // namespace ptk
