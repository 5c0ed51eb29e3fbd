#include "ptk/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "parallel.hpp"
#include "ptk/errors.hpp"
#include "ptk/linalg.hpp"

namespace ptk {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nondegenerate(const IntervalSet& k) {
  if (k.has_degenerate())
    throw InvalidInput("equilibrium: degenerate interval present (use widen)");
}

std::size_t right_endpoint_index(const IntervalSet& k, double a) {
  for (std::size_t j = 0; j < k.size(); ++j)
    if (k[j].right == a) return j;
  const double snap = 1e-12 * (1.0 + std::abs(a));
  for (std::size_t j = 0; j < k.size(); ++j)
    if (std::abs(k[j].right - a) <= snap) return j;
  throw InvalidInput("a is not a right endpoint of the set");
}

// Node count for which the gap integrals of h and t*h are resolved.
template <class H>
int resolve_gap_nodes(double u, double v, H&& h, const NumericConfig& cfg) {
  const double scale = std::max(std::abs(u), std::abs(v)) + (v - u);
  auto moments = [&](int n) {
    const auto rule = GaussChebyshevRule::make(u, v, n);
    double b = 0.0, a = 0.0;
    for (double t : rule.nodes) {
      const double ht = h(t);
      b += ht;
      a += t * ht;
    }
    return std::pair{b * rule.weight, a * rule.weight};
  };
  int n = std::max(8, cfg.quad_min_nodes / 2);
  auto [b0, a0] = moments(n);
  while (2 * n <= cfg.quad_max_nodes) {
    auto [b1, a1] = moments(2 * n);
    if (std::abs(b1 - b0) <= 1e-14 * std::abs(b1) && std::abs(a1 - a0) <= 1e-14 * scale * std::abs(b1))
      return 2 * n;
    n *= 2;
    b0 = b1;
    a0 = a1;
  }
  throw NumericalFailure("equilibrium: gap integrals not resolved at the node cap");
}

}  // namespace

EquilibriumData::EquilibriumData(IntervalSet k, std::vector<double> roots, const NumericConfig& cfg)
    : set_(std::move(k)), roots_(std::move(roots)), cfg_(cfg) {
  series_.reserve(set_.size());
  for (std::size_t j = 0; j < set_.size(); ++j) {
    series_.push_back(ChebyshevSeries::fit([this, j](double t) { return smooth_factor(j, t); },
                                           set_[j].left, set_[j].right, cfg_));
  }
  // Robin constant: equilibrium potential at five interior probes of the
  // longest component.
  std::size_t widest = 0;
  for (std::size_t j = 1; j < set_.size(); ++j)
    if (set_[j].length() > set_[widest].length()) widest = j;
  const Interval& iv = set_[widest];
  double acc = 0.0;
  for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) acc += potential(iv.left + f * iv.length());
  robin_ = acc / 5.0;
  cap_ = std::exp(-robin_);
}

EquilibriumData EquilibriumData::from_roots(IntervalSet k, std::vector<double> roots,
                                            const NumericConfig& cfg) {
  require_nondegenerate(k);
  if (roots.size() + 1 != k.size())
    throw InvalidInput("equilibrium: expected one root per bounded gap");
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (!(roots[i] > k[i].right && roots[i] < k[i + 1].left))
      throw InvalidInput("equilibrium: root outside its gap");
  return EquilibriumData(std::move(k), std::move(roots), cfg);
}

double EquilibriumData::paired_product(double t, std::size_t skip) const {
  double p = 1.0;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (i == skip) continue;
    p *= (t - roots_[i]) / std::sqrt(std::abs(t - set_[i].right) * std::abs(t - set_[i + 1].left));
  }
  return p;
}

double EquilibriumData::q_value(double t) const {
  double p = 1.0;
  for (double r : roots_) p *= (t - r);
  return p;
}

double EquilibriumData::smooth_factor(std::size_t j, double t) const {
  const double outer = std::sqrt(std::abs(t - set_.min()) * std::abs(t - set_.max()));
  const double w = paired_product(t, roots_.size()) / outer;
  return std::abs(w) * std::sqrt((t - set_[j].left) * (set_[j].right - t)) / kPi;
}

double EquilibriumData::density(double t) const {
  const auto c = set_.component_of(t);
  const double excl = cfg_.endpoint_exclusion * std::max(1.0, std::abs(t));
  if (!c || t - set_[*c].left <= excl || set_[*c].right - t <= excl)
    throw InvalidInput("density: point is not in the interior of the set");
  const double outer = std::sqrt(std::abs(t - set_.min()) * std::abs(t - set_.max()));
  return std::abs(paired_product(t, roots_.size()) / outer) / kPi;
}

double EquilibriumData::scaled_density_below(double a, double delta) const {
  const std::size_t j0 = right_endpoint_index(set_, a);
  const double t = set_[j0].right - delta;
  if (!(delta > 0.0) || !(t > set_[j0].left))
    throw InvalidInput("edge profile: offset leaves the component interval");
  // |q(t)| / (pi sqrt(prod over endpoints other than a of |t - e|))
  double p = 1.0;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    const double right = std::abs(t - set_[i + 1].left);
    const double left = i == j0 ? 1.0 : std::abs(t - set_[i].right);
    p *= (t - roots_[i]) / std::sqrt(left * right);
  }
  const double last = j0 + 1 == set_.size() ? 1.0 : std::abs(t - set_.max());
  return std::abs(p) / std::sqrt(std::abs(t - set_.min()) * last) / kPi;
}

double EquilibriumData::omega_factor(double a) const {
  const std::size_t j0 = right_endpoint_index(set_, a);
  const double b = set_[j0].right;
  double p = 1.0;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    const double right = std::abs(b - set_[i + 1].left);
    const double left = i == j0 ? 1.0 : std::abs(b - set_[i].right);
    p *= (b - roots_[i]) / std::sqrt(left * right);
  }
  const double last = j0 + 1 == set_.size() ? 1.0 : std::abs(b - set_.max());
  return std::abs(p) / std::sqrt(std::abs(b - set_.min()) * last) / kPi;
}

double EquilibriumData::potential(double x) const {
  double u = 0.0;
  for (const auto& s : series_) u -= s.log_moment(x);
  return u;
}

double EquilibriumData::green(double z) const {
  const double g = robin_ - potential(z);
  if (set_.contains(z) && std::abs(g) <= cfg_.green_zero_clamp) return 0.0;
  return g;
}

EquilibriumData solve_equilibrium(const IntervalSet& k, const NumericConfig& cfg) {
  require_nondegenerate(k);
  const std::size_t gaps = k.size() - 1;
  std::vector<double> lambda(gaps);
  for (std::size_t i = 0; i < gaps; ++i) lambda[i] = 0.5 * (k[i].right + k[i + 1].left);
  if (gaps == 0) return EquilibriumData(k, {}, cfg);

  const double lo = k.min(), hi = k.max();
  // h_i(t) = prod_{j != i} (t - l_j)/sqrt|..gap j..| / sqrt(|t-lo||t-hi|)
  auto h = [&](std::size_t i, double t) {
    double p = 1.0;
    for (std::size_t j = 0; j < gaps; ++j) {
      if (j == i) continue;
      p *= (t - lambda[j]) / std::sqrt(std::abs(t - k[j].right) * std::abs(t - k[j + 1].left));
    }
    return p / std::sqrt(std::abs(t - lo) * std::abs(t - hi));
  };

  std::vector<GaussChebyshevRule> rules(gaps);
  detail::parallel_for(gaps, [&](std::size_t i) {
    const int n = resolve_gap_nodes(k[i].right, k[i + 1].left,
                                    [&](double t) { return h(i, t); }, cfg);
    rules[i] = GaussChebyshevRule::make(k[i].right, k[i + 1].left, n);
  });

  // Newton on phi_i(lambda) = lambda_i - (int t h_i)/(int h_i)
  std::vector<double> phi(gaps);
  Matrix jac(gaps, gaps);
  auto assemble = [&] {
    detail::parallel_for(gaps, [&](std::size_t i) {
      const auto& rule = rules[i];
      std::vector<double> hv(rule.nodes.size());
      double b = 0.0, a = 0.0;
      for (std::size_t s = 0; s < hv.size(); ++s) {
        hv[s] = h(i, rule.nodes[s]);
        b += hv[s];
        a += rule.nodes[s] * hv[s];
      }
      const double r = a / b;
      phi[i] = lambda[i] - r;
      for (std::size_t j = 0; j < gaps; ++j) {
        if (j == i) {
          jac(i, j) = 1.0;
          continue;
        }
        double acc = 0.0;
        for (std::size_t s = 0; s < hv.size(); ++s)
          acc += (rule.nodes[s] - r) * hv[s] / (rule.nodes[s] - lambda[j]);
        jac(i, j) = acc / b;
      }
    });
  };

  bool converged = false;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    assemble();
    double worst = 0.0;
    for (std::size_t i = 0; i < gaps; ++i)
      worst = std::max(worst, std::abs(phi[i]) / (k[i + 1].left - k[i].right));
    // small gaps hit the rounding floor before newton_tol; accept a stalled
    // residual once it is below solve_tol
    if (worst <= cfg.newton_tol * 10.0 || (worst <= cfg.solve_tol && worst > 0.25 * previous)) {
      converged = true;
      break;
    }
    previous = worst;
    std::vector<double> rhs(gaps);
    for (std::size_t i = 0; i < gaps; ++i) rhs[i] = -phi[i];
    const std::vector<double> step = solve_dense(jac, rhs, cfg);
    double scale = 1.0;
    for (int halving = 0; halving < 60; ++halving) {
      bool inside = true;
      for (std::size_t i = 0; i < gaps && inside; ++i) {
        const double v = lambda[i] + scale * step[i];
        inside = v > k[i].right && v < k[i + 1].left;
      }
      if (inside) break;
      scale *= 0.5;
    }
    double moved = 0.0;
    for (std::size_t i = 0; i < gaps; ++i) {
      lambda[i] += scale * step[i];
      moved = std::max(moved, std::abs(scale * step[i]) / (k[i + 1].left - k[i].right));
    }
    if (moved <= cfg.newton_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericalFailure("solve_equilibrium: Newton iteration did not converge");
  return EquilibriumData(k, std::move(lambda), cfg);
}

MonicPoly lambda_polynomial_by_moments(const IntervalSet& k, const NumericConfig& cfg) {
  require_nondegenerate(k);
  const std::size_t m = k.size();
  if (m == 1) return MonicPoly{};
  const double lo = k.min(), hi = k.max();
  const double alpha = 2.0 / (hi - lo), beta = -(hi + lo) / (hi - lo);
  std::vector<double> ends;  // mapped endpoints a_0,b_0,a_1,b_1,...
  for (const auto& iv : k.intervals()) {
    ends.push_back(alpha * iv.left + beta);
    ends.push_back(alpha * iv.right + beta);
  }
  const std::size_t d = m - 1;
  Matrix mom(d, d);
  std::vector<double> rhs(d);
  for (std::size_t g = 0; g < d; ++g) {
    const double u = ends[2 * g + 1], v = ends[2 * g + 2];
    auto weight = [&](double s) {
      double p = 1.0;
      for (std::size_t e = 0; e < ends.size(); ++e)
        if (e != 2 * g + 1 && e != 2 * g + 2) p *= std::abs(s - ends[e]);
      return 1.0 / std::sqrt(p);
    };
    for (std::size_t i = 0; i <= d; ++i) {
      const double mi = integrate_endpoint_singular(
          [&](double s) { return std::pow(s, static_cast<double>(i)) * weight(s); }, u, v, cfg);
      if (i < d)
        mom(g, i) = mi;
      else
        rhs[g] = -mi;
    }
  }
  std::vector<double> c = solve_dense(mom, rhs, cfg);
  c.push_back(1.0);
  // q(t) = q_s(alpha t + beta) / alpha^d, expanded binomially
  std::vector<double> out(d + 1, 0.0);
  for (std::size_t i = 0; i <= d; ++i) {
    double binom = 1.0;
    for (std::size_t r = 0; r <= i; ++r) {
      // term c_i * C(i,r) alpha^r t^r beta^{i-r}
      out[r] += c[i] * binom * std::pow(alpha, static_cast<double>(r)) *
                std::pow(beta, static_cast<double>(i - r));
      binom = binom * static_cast<double>(i - r) / static_cast<double>(r + 1);
    }
  }
  const double lead = std::pow(alpha, static_cast<double>(d));
  for (double& v : out) v /= lead;
  out.pop_back();
  return MonicPoly(std::move(out));
}

double density(const EquilibriumData& e, double t) { return e.density(t); }
double omega_factor(const EquilibriumData& e, double a) { return e.omega_factor(a); }
double equilibrium_potential(const EquilibriumData& e, double x) { return e.potential(x); }
double capacity(const EquilibriumData& e) { return e.cap(); }
double green(const EquilibriumData& e, double z) { return e.green(z); }

void BalayageQuery::validate(double margin) const {
  if (!(b < a)) throw InvalidInput("balayage: requires b < a");
  if (x >= b - margin && x <= a + margin) throw InvalidInput("balayage: source point inside [b, a]");
}

double balayage_density(const BalayageQuery& qy, double t) {
  qy.validate();
  if (!(t > qy.b && t < qy.a)) throw InvalidInput("balayage: t outside (b, a)");
  return std::sqrt(std::abs(qy.x - qy.b) * std::abs(qy.x - qy.a)) /
         (std::abs(t - qy.x) * std::sqrt(std::abs(t - qy.a) * std::abs(t - qy.b))) / kPi;
}

double balayage_edge_limit(const BalayageQuery& qy) {
  qy.validate();
  return std::sqrt(std::abs(qy.x - qy.b)) /
         std::sqrt(std::abs(qy.x - qy.a) * std::abs(qy.a - qy.b)) / kPi;
}

double balayage_mass(const BalayageQuery& qy, const NumericConfig& cfg) {
  qy.validate();
  const double c = std::sqrt(std::abs(qy.x - qy.b) * std::abs(qy.x - qy.a)) / kPi;
  return integrate_endpoint_singular([&](double t) { return c / std::abs(t - qy.x); }, qy.b,
                                     qy.a, cfg);
}

double balayage_correction(const EquilibriumData& e, const EndpointContext& ctx, double t,
                           const NumericConfig& cfg) {
  const double a = ctx.a, b = ctx.a - ctx.rho;
  if (!(t > b && t < a)) throw InvalidInput("decomposition: t must lie in (a - rho, a)");
  const IntervalSet& k = e.set();
  const double tail = 1.0 / std::sqrt((a - t) * (t - b)) / kPi;
  auto kernel = [&](double x) {
    return std::sqrt(std::abs(x - b) * std::abs(x - a)) / std::abs(t - x) * tail;
  };
  double total = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double lo = k[j].left, hi = k[j].right;
    if (j == ctx.component) {
      if (!(lo < b)) continue;
      total += integrate_endpoint_singular(
          [&](double x) {
            return e.smooth_factor(j, x) / std::sqrt(hi - x) * std::sqrt(b - x) * kernel(x);
          },
          lo, b, cfg);
    } else {
      total += integrate_endpoint_singular([&](double x) { return e.smooth_factor(j, x) * kernel(x); },
                                           lo, hi, cfg);
    }
  }
  return total;
}

double decomposition_residual(const EquilibriumData& e, const EndpointContext& ctx, double t,
                              const NumericConfig& cfg) {
  const double b = ctx.a - ctx.rho;
  const double local = 1.0 / (kPi * std::sqrt((t - b) * (ctx.a - t)));
  return std::abs(e.density(t) - (local - balayage_correction(e, ctx, t, cfg)));
}

std::vector<EdgeSample> edge_limit_profile(const EquilibriumData& e, double a,
                                           const std::vector<double>& offsets) {
  std::vector<EdgeSample> out;
  out.reserve(offsets.size());
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (!(offsets[i] > 0.0)) throw InvalidInput("edge profile: offsets must be positive");
    if (i > 0 && !(offsets[i] < offsets[i - 1]))
      throw InvalidInput("edge profile: offsets must be decreasing");
    out.push_back({offsets[i], e.scaled_density_below(a, offsets[i])});
  }
  return out;
}

std::vector<ConvergenceRow> outer_convergence_study(const IntervalSet& k,
                                                    const EndpointContext& ctx,
                                                    const std::vector<int>& m_list,
                                                    const NumericConfig& cfg) {
  std::vector<ConvergenceRow> rows(m_list.size());
  detail::parallel_for(m_list.size(), [&](std::size_t i) {
    const IntervalSet km = outer_approx(k, ctx, m_list[i]);
    const EquilibriumData e = solve_equilibrium(km, cfg);
    rows[i] = {m_list[i], km.size(), e.omega_factor(ctx.a)};
  });
  return rows;
}

}  // namespace ptk
