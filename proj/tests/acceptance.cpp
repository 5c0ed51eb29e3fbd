// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ptk/equilibrium.hpp"
#include "ptk/extremal.hpp"
#include "ptk/schur.hpp"

using namespace ptk;
using oracle::set;

namespace {

constexpr double pi = std::numbers::pi;

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const std::vector<IntervalSet>& random_family() {
  static const std::vector<IntervalSet> sets = oracle::random_sets(50, 20240611);
  return sets;
}

Verdict normalization() {
  double worst = 0.0, slowest = 0.0;
  for (const IntervalSet& k : random_family()) {
    const auto t0 = std::chrono::steady_clock::now();
    const EquilibriumData e = solve_equilibrium(k);
    double mass = 0.0;
    for (const Interval& iv : k.intervals())
      mass += oracle::integrate_edges([&](double t) { return e.density(t); }, iv.left, iv.right);
    slowest = std::max(slowest, seconds_since(t0));
    worst = std::max(worst, std::abs(mass - 1.0));
  }
  return {worst <= 1e-9 && slowest < 1.0, fmt("max |mass-1| = %.2e, slowest set %.3f s", worst, slowest)};
}

Verdict lambda_location() {
  int bad = 0;
  for (const IntervalSet& k : random_family()) {
    const EquilibriumData e = solve_equilibrium(k);
    for (std::size_t g = 0; g + 1 < k.size(); ++g)
      if (!(e.q_value(k[g].right) * e.q_value(k[g + 1].left) < 0.0)) ++bad;
    for (const Interval& iv : k.intervals()) {
      const double s0 = e.q_value(iv.left + iv.length() / 101.0);
      for (int i = 1; i <= 100; ++i)
        if (!(e.q_value(iv.left + iv.length() * i / 101.0) * s0 > 0.0)) ++bad;
    }
  }
  return {bad == 0, fmt("%.0f sign violations over 50 sets", bad)};
}

Verdict omega_closed_form() {
  const auto t0 = std::chrono::steady_clock::now();
  const double omega = solve_equilibrium(set({{-2, 1}})).omega_factor(1);
  const double dt = seconds_since(t0);
  const double err = std::abs(omega - 1 / (pi * std::sqrt(3.0)));
  return {err <= 1e-10 && dt < 0.1, fmt("Omega = %.12f, error %.2e, %.4f s", omega, err, dt)};
}

Verdict cross_formula() {
  double worst = 0.0;
  for (double alpha : {0.2, 0.5, 0.8}) {
    const InverseImageMap t2 = quadratic_inverse_image(alpha);
    const double via_density = solve_equilibrium(t2.target()).omega_factor(1);
    const double via_map = std::sqrt(std::abs(t2.derivative(1))) / (std::sqrt(2.0) * pi * 2);
    worst = std::max(worst, std::abs(via_density / via_map - 1));
  }
  return {worst <= 1e-8, fmt("max relative difference %.2e", worst)};
}

Verdict capacity_check() {
  const double c1 = solve_equilibrium(set({{-1, 1}})).cap();
  const double c2 = solve_equilibrium(set({{-2, 1}})).cap();
  double spread = 0.0;
  std::vector<IntervalSet> sets = random_family();
  sets.push_back(set({{-1, -0.5}, {0.5, 1}}));
  sets.push_back(cantor_set(5, 1.0 / 3));
  for (const IntervalSet& k : sets) {
    const EquilibriumData e = solve_equilibrium(k);
    double lo = INFINITY, hi = -INFINITY;
    for (const Interval& iv : k.intervals())
      for (int i = 1; i <= 10; ++i) {
        const double u = e.potential(iv.left + iv.length() * i / 11.0);
        lo = std::min(lo, u), hi = std::max(hi, u);
      }
    spread = std::max(spread, hi - lo);
  }
  const double err = std::max(std::abs(c1 - 0.5), std::abs(c2 - 0.75));
  return {err <= 1e-8 && spread <= 1e-7, fmt("cap error %.2e, max potential spread %.2e", err, spread)};
}

Verdict green_check() {
  const EquilibriumData e = solve_equilibrium(set({{-1, 1}}));
  const double err = std::abs(e.green(2) - std::log(2 + std::sqrt(3.0)));
  double on_k = 0.0;
  for (const IntervalSet& k : {set({{-1, 1}}), set({{-1, -0.5}, {0.5, 1}}), set({{-2, 0}, {1, 2}})}) {
    const EquilibriumData ek = solve_equilibrium(k);
    for (const Interval& iv : k.intervals())
      for (int i = 0; i <= 20; ++i) on_k = std::max(on_k, std::abs(ek.green(iv.left + iv.length() * i / 20.0)));
  }
  return {err <= 1e-8 && on_k <= 1e-9, fmt("g(2) error %.2e, max |g| on K %.2e", err, on_k)};
}

Verdict balayage_check() {
  const BalayageQuery q{2, -1, 1};
  const double mass_err = std::abs(balayage_mass(q) - 1);
  double resid = 0.0;
  for (const IntervalSet& k : {set({{-1, -0.5}, {0.5, 1}}), set({{-3, -1}, {-0.5, 0}, {0.2, 1}})}) {
    const EquilibriumData e = solve_equilibrium(k);
    const EndpointContext ctx = check_interval_condition(k, 1);
    for (int i = 1; i <= 20; ++i)
      resid = std::max(resid, decomposition_residual(e, ctx, ctx.a - ctx.rho + ctx.rho * i / 21.0));
  }
  const double d = 1e-7;
  const double edge = std::abs(balayage_density(q, q.a - d) * std::sqrt(d) - balayage_edge_limit(q));
  return {mass_err <= 1e-9 && resid < 1e-6 && edge < 1e-3,
          fmt("mass error %.2e, max residual %.2e, edge error %.2e", mass_err, resid, edge)};
}

Verdict monotonicity() {
  const auto t0 = std::chrono::steady_clock::now();
  const IntervalSet c = cantor_set(6, 1.0 / 3);
  const EndpointContext ctx = check_interval_condition(c, 1);
  const auto rows = outer_convergence_study(c, ctx, {2, 4, 8, 16, 32, 63, 64});
  bool ok = true;
  for (std::size_t i = 1; i < rows.size(); ++i) ok = ok && rows[i].omega >= rows[i - 1].omega;
  const double full = solve_equilibrium(c).omega_factor(1);
  const double end_err = std::abs(rows.back().omega - full);
  const double dt = seconds_since(t0);
  return {ok && end_err <= 1e-12 && dt < 30,
          std::string(ok ? "nondecreasing" : "not monotone") +
              fmt(", |last - Omega(K)| = %.2e, %.2f s", end_err, dt)};
}

Verdict markov_one() {
  const auto t0 = std::chrono::steady_clock::now();
  const MarkovStudy st = markov_study(set({{-1, 1}}), 1, {5, 10, 20, 30});
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& r : st.rows) lo = std::min(lo, r.ratio), hi = std::max(hi, r.ratio);
  const double dt = seconds_since(t0);
  return {lo >= 0.999 && hi <= 1.0001 && dt < 60, fmt("ratios in [%.9f, %.9f], %.2f s", lo, hi, dt)};
}

Verdict markov_trend(const IntervalSet& k, double limit, double* seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  const MarkovStudy st = markov_study(k, 1, {10, 20, 40, 60});
  *seconds = seconds_since(t0);
  bool increasing = true, envelope = true;
  for (std::size_t i = 0; i < st.rows.size(); ++i) {
    if (i > 0) increasing = increasing && st.rows[i].ratio >= st.rows[i - 1].ratio - 1e-6;
    envelope = envelope && st.rows[i].ratio <= limit * 1.02;
  }
  const double last = st.rows.back().ratio;
  const bool constant_ok = std::abs(st.limit_constant - limit) <= 1e-9;
  std::string detail = "ratios";
  for (const auto& r : st.rows) detail += fmt(" %.9f", r.ratio);
  detail += fmt("; limit %.9f; last/limit %.6f; %.2f s", st.limit_constant, last / limit, *seconds);
  return {increasing && envelope && constant_ok && last >= 0.85 * limit, detail};
}

Verdict markov_two() {
  double dt = 0;
  Verdict v = markov_trend(set({{-1, -0.5}, {0.5, 1}}), 4.0 / 3, &dt);
  v.pass = v.pass && dt < 600;
  return v;
}

Verdict markov_three() {
  double dt = 0;
  Verdict v = markov_trend(set({{-2, 1}}), 2.0 / 3, &dt);
  v.pass = v.pass && dt < 600;
  return v;
}

Verdict bernstein() {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> deg(1, 30);
  double worst_b = 0.0, worst_bw = 0.0;
  for (const IntervalSet& k : {set({{-1, 1}}), set({{-1, -0.5}, {0.5, 1}}), set({{-2, 1}}),
                               set({{-2, -1}, {0, 0.5}, {2, 4}})}) {
    const EquilibriumData e = solve_equilibrium(k);
    std::vector<double> probes;
    for (const Interval& iv : k.intervals())
      for (int i = 1; i <= 25; ++i) probes.push_back(iv.left + iv.length() * i / 26.0);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
      for (double& v : c) v = nd(rng);
      const ChebPoly raw(k.min(), k.max(), c);
      const double norm = grid_norm(k, [&](double x) { return raw(x); }, 64 * static_cast<int>(c.size()));
      for (double& v : c) v /= norm;
      const ChebPoly p(k.min(), k.max(), c);
      worst_b = std::max(worst_b, bernstein_audit(e, p, probes));
      worst_bw = std::max(worst_bw, bernstein_walsh_audit(e, p, k.max() + 1));
    }
  }
  return {worst_b <= 1.001 && worst_bw <= 1.001,
          fmt("max Bernstein ratio %.6f, max Bernstein-Walsh ratio %.6f", worst_b, worst_bw)};
}

Verdict counterexample() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool above = true;
  for (int n : {10, 20, 50, 100, 200}) {
    const AuditReport r = counterexample_demo(n);
    const double expected = ((n + 1.0) / n) / std::sqrt(2.0 / 3);
    worst = std::max(worst, std::abs(r.point_ratio / expected - 1));
    above = above && r.point_ratio > 1.0 && r.local_ok;
  }
  const AuditReport r200 = counterexample_demo(200);
  const double growth_err = std::abs(r200.growth_estimate / (2 + std::sqrt(3.0)) - 1);
  const double dt = seconds_since(t0);
  return {above && worst <= 1e-9 && growth_err < 0.01 && dt < 5,
          fmt("point ratio formula error %.2e, growth at n=200 off by %.4f%%, %.2f s", worst, 100 * growth_err, dt)};
}

Verdict witness() {
  const auto t0 = std::chrono::steady_clock::now();
  const InverseImageMap t2 = quadratic_inverse_image(0.5);
  const int n = 400;
  const SchurWitness w = build_witness(t2, 1.0, n, 0.05);
  const IntervalSet& k = t2.target();
  const AuditReport r = audit_bound([&](double x) { return w(x); }, [](double) { return 1.0; }, k,
                                    check_interval_condition(k, 1), n, solve_equilibrium(k));
  const double closed = ((w.m() + 1) * 2.0 / n) / (1.05 * 1.05);
  const double dt = seconds_since(t0);
  const bool pass = r.local_ok && std::abs(r.point_ratio - closed) <= 1e-3 && r.norm_ratio <= 1.0 && dt < 30;
  return {pass, fmt("point ratio %.6f vs %.6f, norm ratio %.6f", r.point_ratio, closed, r.norm_ratio) +
                    (r.local_ok ? ", local hypothesis holds" : ", local hypothesis fails") + fmt(", %.2f s", dt)};
}

Verdict edge_profile() {
  const EquilibriumData e = solve_equilibrium(set({{-1, 1}}));
  const double omega = e.omega_factor(1);
  double worst = 0.0;
  for (int k = 2; k <= 8; ++k) {
    const double d = std::pow(10.0, -k);
    worst = std::max(worst, std::abs(e.scaled_density_below(1, d) - omega) / d);
  }
  return {worst <= 0.6, fmt("max |omega(a-d) sqrt(d) - Omega| / d = %.4f", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"normalization", normalization},
      {"gap root location", lambda_location},
      {"Omega([-2,1],1)", omega_closed_form},
      {"Omega cross-formula", cross_formula},
      {"capacity", capacity_check},
      {"Green's function", green_check},
      {"balayage", balayage_check},
      {"Omega monotone on Cantor filtration", monotonicity},
      {"Markov on [-1,1]", markov_one},
      {"Markov on two intervals", markov_two},
      {"Markov on [-2,1]", markov_three},
      {"Bernstein audits", bernstein},
      {"Schur counterexample", counterexample},
      {"Schur witness", witness},
      {"edge-limit profile", edge_profile},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& ex) {
      v = {false, std::string("exception: ") + ex.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
