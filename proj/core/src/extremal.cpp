#include "ptk/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "ptk/errors.hpp"
#include "ptk/lp.hpp"

namespace ptk {

namespace {

constexpr double kPi = std::numbers::pi;

// Interpolation nodes: per-component Chebyshev-Lobatto points, counts
// proportional to the equilibrium mass of the component.
std::vector<double> extremal_nodes(const EquilibriumData& e, std::size_t home, int n) {
  const IntervalSet& k = e.set();
  const std::size_t total = static_cast<std::size_t>(n) + 1;
  std::vector<std::size_t> count(k.size(), 0);
  std::vector<std::pair<double, std::size_t>> frac;
  std::size_t used = 0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double share = e.component_mass(j) * static_cast<double>(total);
    count[j] = static_cast<std::size_t>(std::floor(share));
    used += count[j];
    frac.push_back({share - std::floor(share), j});
  }
  std::stable_sort(frac.begin(), frac.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  for (std::size_t r = 0; used < total; ++r, ++used) ++count[frac[r % frac.size()].second];
  const std::size_t want_home = std::min<std::size_t>(2, total);
  while (count[home] < want_home) {
    const auto donor = std::max_element(count.begin(), count.end()) - count.begin();
    --count[static_cast<std::size_t>(donor)];
    ++count[home];
  }
  std::vector<double> nodes;
  nodes.reserve(total);
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double mid = 0.5 * (k[j].left + k[j].right), half = 0.5 * k[j].length();
    const std::size_t c = count[j];
    if (c == 1) {
      nodes.push_back(mid);
      continue;
    }
    for (std::size_t i = 0; i < c; ++i) {
      double x = mid - half * std::cos(kPi * static_cast<double>(i) / static_cast<double>(c - 1));
      if (i == 0) x = k[j].left;
      if (i + 1 == c) x = k[j].right;
      nodes.push_back(x);
    }
  }
  return nodes;
}

// Nearest grid index for each point; empty when two points collide.
std::vector<std::size_t> nearest_indices(const std::vector<double>& grid, const std::vector<double>& points) {
  std::vector<std::size_t> idx;
  for (double z : points) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), z);
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    if (i == grid.size() || (i > 0 && std::abs(grid[i - 1] - z) < std::abs(grid[i] - z))) --i;
    idx.push_back(i);
  }
  std::vector<std::size_t> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return {};
  return idx;
}

// `warm` is the reference of an earlier solve; the nodes are the fallback.
LPResult solve_grid_lp(const std::vector<double>& grid, const BarycentricBasis& basis, double target,
                       const std::vector<double>& warm, const NumericConfig& cfg) {
  const std::size_t d = basis.size();
  LPProblem prob;
  prob.points = grid;
  prob.objective.assign(d, 0.0);
  basis.derivative_row(target, prob.objective);
  prob.constraints = Matrix(grid.size(), d);
  for (std::size_t i = 0; i < grid.size(); ++i) basis.row(grid[i], prob.constraints.row(i));
  std::vector<std::size_t> start = nearest_indices(grid, warm);
  if (start.size() != d) start = nearest_indices(grid, basis.nodes());
  return lp_maximize(prob, cfg, start);
}

std::vector<double> reference_points(const LPResult& lp, const std::vector<double>& grid) {
  std::vector<double> pts;
  for (std::size_t i : lp.reference) pts.push_back(grid[i]);
  return pts;
}

struct Peak {
  double x;
  double value;
};

// Local maxima of |P| over K: scanned on `scan`, polished by golden section
// between the neighbouring scan points of the same component.
std::vector<Peak> local_peaks(const IntervalSet& k, const BarycentricBasis& basis,
                              const std::vector<double>& values, int per_interval) {
  const auto absp = [&](double x) { return std::abs(basis.evaluate(values, x)); };
  std::vector<Peak> peaks;
  for (const auto& iv : k.intervals()) {
    const IntervalSet one = IntervalSet::normalize(std::span<const Interval>(&iv, 1));
    const std::vector<double> scan = arccos_grid(one, per_interval);
    std::vector<double> v(scan.size());
    for (std::size_t i = 0; i < scan.size(); ++i) v[i] = absp(scan[i]);
    for (std::size_t i = 0; i < scan.size(); ++i) {
      const bool left_ok = i == 0 || v[i] >= v[i - 1];
      const bool right_ok = i + 1 == scan.size() || v[i] >= v[i + 1];
      if (!left_ok || !right_ok) continue;
      if (i == 0 || i + 1 == scan.size()) {
        peaks.push_back({scan[i], v[i]});
        continue;
      }
      double lo = scan[i - 1], hi = scan[i + 1];
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
      double f1 = absp(x1), f2 = absp(x2);
      for (int it = 0; it < 60 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
        if (f1 >= f2) {
          hi = x2, x2 = x1, f2 = f1;
          x1 = hi - gr * (hi - lo), f1 = absp(x1);
        } else {
          lo = x1, x1 = x2, f1 = f2;
          x2 = lo + gr * (hi - lo), f2 = absp(x2);
        }
      }
      const Peak best = f1 >= f2 ? Peak{x1, f1} : Peak{x2, f2};
      peaks.push_back(best.value >= v[i] ? best : Peak{scan[i], v[i]});
    }
  }
  return peaks;
}

ExtremalResult extremal_for_target(const EquilibriumData& e, double a, int n, double target,
                                   const NumericConfig& cfg) {
  if (n < 1 || n > cfg.max_degree)
    throw InvalidInput("markov_extremal: degree must lie in [1, " + std::to_string(cfg.max_degree) + "]");
  const IntervalSet& k = e.set();
  const EndpointContext ctx = check_interval_condition(k, a);
  auto basis = std::make_shared<const BarycentricBasis>(extremal_nodes(e, ctx.component, n));

  // coarse-to-fine: each grid starts from the optimal reference of the last
  const int per = cfg.grid_factor * (n + 1);
  int iterations = 0;
  std::vector<double> warm;
  for (int coarse = std::max(2, 4 * (n + 1)); coarse < per; coarse *= 2) {
    const std::vector<double> g = arccos_grid(k, coarse);
    const LPResult lp = solve_grid_lp(g, *basis, target, warm, cfg);
    iterations += lp.iterations;
    warm = reference_points(lp, g);
  }
  std::vector<double> grid = arccos_grid(k, per);
  constexpr int kRounds = 12;
  for (int round = 0; round < kRounds; ++round) {
    const LPResult lp = solve_grid_lp(grid, *basis, target, warm, cfg);
    iterations += lp.iterations;
    warm = reference_points(lp, grid);
    const std::vector<Peak> peaks = local_peaks(k, *basis, lp.coeffs, cfg.validation_factor * per);
    double vmax = 0.0;
    for (const Peak& pk : peaks) vmax = std::max(vmax, pk.value);
    if (vmax > 1.0 + cfg.overshoot_tol) {
      // exchange: the violating peaks join the constraint set
      std::size_t before = grid.size();
      for (const Peak& pk : peaks)
        if (pk.value > 1.0) grid.push_back(pk.x);
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      if (grid.size() == before) break;
      continue;
    }
    ExtremalResult r;
    r.degree = n;
    r.nodes = basis->nodes();
    r.nodal_values = lp.coeffs;
    const double scale = 1.0 / std::max(1.0, vmax);
    for (double& v : r.nodal_values) v *= scale;
    r.basis = basis;
    r.value = std::abs(basis->derivative(r.nodal_values, target));
    r.ratio = r.value / (static_cast<double>(n) * n);
    r.active_points = lp.active;
    r.validation_max = vmax * scale;
    r.grid_points = grid.size();
    r.lp_iterations = iterations;
    return r;
  }
  throw NumericalFailure("markov_extremal: witness still overshoots the validation grid after refinement");
}

}  // namespace

double ExtremalResult::operator()(double x) const {
  if (!basis) throw InvalidInput("ExtremalResult: no witness");
  return basis->evaluate(nodal_values, x);
}

double ExtremalResult::derivative(double x) const {
  if (!basis) throw InvalidInput("ExtremalResult: no witness");
  return basis->derivative(nodal_values, x);
}

ChebPoly ExtremalResult::to_chebyshev(double lo, double hi) const {
  return ChebPoly::interpolate(lo, hi, degree, [this](double x) { return (*this)(x); });
}

std::vector<double> arccos_grid(const IntervalSet& k, int per_interval) {
  if (per_interval < 2) throw InvalidInput("arccos_grid: need at least two points per interval");
  std::vector<double> g;
  g.reserve(k.size() * static_cast<std::size_t>(per_interval));
  for (const auto& iv : k.intervals()) {
    if (iv.degenerate()) {
      g.push_back(iv.left);
      continue;
    }
    const double mid = 0.5 * (iv.left + iv.right), half = 0.5 * iv.length();
    g.push_back(iv.left);
    for (int i = 1; i + 1 < per_interval; ++i)
      g.push_back(mid - half * std::cos(kPi * i / (per_interval - 1)));
    g.push_back(iv.right);
  }
  return g;
}

ExtremalResult markov_extremal(const EquilibriumData& e, double a, int n, const NumericConfig& cfg) {
  const EndpointContext ctx = check_interval_condition(e.set(), a);
  return extremal_for_target(e, ctx.a, n, ctx.a, cfg);
}

ExtremalResult markov_extremal(const IntervalSet& k, double a, int n, const NumericConfig& cfg) {
  return markov_extremal(solve_equilibrium(k, cfg), a, n, cfg);
}

ExtremalResult markov_extremal_norm(const EquilibriumData& e, double a, int n,
                                    const std::vector<double>& targets, const NumericConfig& cfg) {
  if (targets.empty()) throw InvalidInput("markov_extremal_norm: no target points");
  const EndpointContext ctx = check_interval_condition(e.set(), a);
  std::vector<ExtremalResult> rows(targets.size());
  detail::parallel_for(targets.size(), [&](std::size_t i) {
    rows[i] = extremal_for_target(e, ctx.a, n, targets[i], cfg);
  });
  return *std::max_element(rows.begin(), rows.end(),
                           [](const auto& x, const auto& y) { return x.value < y.value; });
}

MarkovStudy markov_study(const IntervalSet& k, double a, const std::vector<int>& degrees,
                         const NumericConfig& cfg) {
  for (std::size_t i = 1; i < degrees.size(); ++i)
    if (degrees[i] <= degrees[i - 1]) throw InvalidInput("markov_study: degrees must be increasing");
  const EquilibriumData e = solve_equilibrium(k, cfg);
  const EndpointContext ctx = check_interval_condition(k, a);
  MarkovStudy study;
  study.set = k;
  study.a = ctx.a;
  const double omega = e.omega_factor(ctx.a);
  study.limit_constant = 2.0 * kPi * kPi * omega * omega;
  study.rows.resize(degrees.size());
  detail::parallel_for(degrees.size(), [&](std::size_t i) {
    study.rows[i] = markov_extremal(e, ctx.a, degrees[i], cfg);
  });
  for (const auto& r : study.rows)
    if (r.degree >= 10 && r.ratio > study.limit_constant * 1.02) study.flagged.push_back(r.degree);
  return study;
}

double grid_norm(const IntervalSet& k, const RealFunction& p, int per_interval) {
  double best = 0.0;
  for (double x : arccos_grid(k, per_interval)) best = std::max(best, std::abs(p(x)));
  return best;
}

namespace {

int effective_degree(const ChebPoly& p) {
  int deg = p.degree();
  while (deg > 0 && p.coeffs()[static_cast<std::size_t>(deg)] == 0.0) --deg;
  return deg;
}

}  // namespace

double bernstein_audit(const EquilibriumData& e, const ChebPoly& p, const std::vector<double>& probes) {
  const int n = effective_degree(p);
  if (n == 0) return 0.0;
  const double norm = grid_norm(e.set(), [&](double x) { return p(x); }, 64 * (n + 1));
  if (norm == 0.0) return 0.0;
  double worst = 0.0;
  for (double x : probes)
    worst = std::max(worst, std::abs(p.derivative(x)) / (n * kPi * e.density(x) * norm));
  return worst;
}

double bernstein_walsh_audit(const EquilibriumData& e, const ChebPoly& p, double z) {
  if (e.set().contains(z)) throw InvalidInput("bernstein_walsh_audit: z must lie outside K");
  const int n = effective_degree(p);
  const double norm = grid_norm(e.set(), [&](double x) { return p(x); }, 64 * (n + 1));
  if (norm == 0.0) return 0.0;
  return std::abs(p(z)) / (norm * std::exp(n * e.green(z)));
}

}  // namespace ptk
