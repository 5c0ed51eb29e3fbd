#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ptk/errors.hpp"
#include "ptk/extremal.hpp"

using namespace ptk;
using oracle::set;
constexpr double pi = std::numbers::pi;

TEST_CASE("Markov extremal on one interval matches T_n") {
  const IntervalSet k = set({{-1, 1}});
  for (int n : {1, 2, 5, 12}) {
    const ExtremalResult r = markov_extremal(k, 1, n);
    CHECK(r.value == doctest::Approx(double(n) * n).epsilon(1e-6));
    CHECK(r.validation_max <= 1.0 + 1e-6);
    CHECK(std::abs(r.derivative(1.0)) == doctest::Approx(r.value).epsilon(1e-9));
    const ChebPoly c = r.to_chebyshev(-1, 1);
    for (int j = 0; j <= n; ++j) CHECK(std::abs(c.coeffs()[j] - (j == n ? 1.0 : 0.0)) <= 1e-6);
  }
  // shifted interval: T_n composed with the affine map
  const ExtremalResult s = markov_extremal(set({{2, 5}}), 5, 7);
  CHECK(s.value == doctest::Approx(49.0 * 2 / 3).epsilon(1e-6));
}

TEST_CASE("degree one on two intervals") {
  const ExtremalResult r = markov_extremal(set({{-1, -0.5}, {0.5, 1}}), 1, 1);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("extremal argument checks") {
  CHECK_THROWS_AS(markov_extremal(set({{-1, 1}}), 1, 0), InvalidInput);
  CHECK_THROWS_AS(markov_extremal(set({{-1, 1}}), 1, 121), InvalidInput);
  CHECK_THROWS_AS(markov_extremal(set({{-1, 1}}), 0.5, 3), InvalidInput);
  CHECK_THROWS_AS(markov_study(set({{-1, 1}}), 1, {5, 5}), InvalidInput);
}

TEST_CASE("Markov study limit constants") {
  const MarkovStudy one = markov_study(set({{-1, 1}}), 1, {5, 10});
  CHECK(one.limit_constant == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& r : one.rows) CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(one.ok());
  const MarkovStudy two = markov_study(set({{-1, -0.5}, {0.5, 1}}), 1, {4, 8, 16});
  CHECK(two.limit_constant == doctest::Approx(4.0 / 3).epsilon(1e-10));
  CHECK(two.rows[0].degree == 4);
  CHECK(two.rows[2].degree == 16);
  const MarkovStudy ex = markov_study(set({{-2, 1}}), 1, {10});
  CHECK(ex.limit_constant == doctest::Approx(2.0 / 3).epsilon(1e-10));
}

TEST_CASE("ratios increase on an asymmetric set") {
  const IntervalSet k = set({{-1, -0.2}, {0.3, 1}});
  const MarkovStudy st = markov_study(k, 1, {10, 20, 40});
  for (std::size_t i = 1; i < st.rows.size(); ++i) CHECK(st.rows[i].ratio >= st.rows[i - 1].ratio - 1e-6);
  for (const auto& r : st.rows) CHECK(r.ratio <= st.limit_constant * 1.02);
  CHECK(st.ok());
}

TEST_CASE("pointwise and norm objectives agree") {
  const IntervalSet k = set({{-1, -0.5}, {0.5, 1}});
  const EquilibriumData e = solve_equilibrium(k);
  const EndpointContext ctx = check_interval_condition(k, 1);
  std::vector<double> targets;
  for (int i = 0; i < 50; ++i) targets.push_back(ctx.a - ctx.rho + ctx.rho * i / 49.0);
  const ExtremalResult point = markov_extremal(e, 1, 40);
  const ExtremalResult norm = markov_extremal_norm(e, 1, 40, targets);
  CHECK(std::abs(norm.ratio - point.ratio) <= 0.01 * point.ratio);
}

TEST_CASE("Bernstein audits") {
  const EquilibriumData e = solve_equilibrium(set({{-1, 1}}));
  for (int n : {3, 4, 7, 8}) {
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    const ChebPoly t(-1, 1, c);
    CHECK(bernstein_audit(e, t, {0.0}) == doctest::Approx(std::abs(std::sin(n * pi / 2))).scale(1.0));
    const double z = 2.0, g = std::log(2 + std::sqrt(3.0));
    CHECK(bernstein_walsh_audit(e, t, z) == doctest::Approx(cheb_T(n, z) / std::exp(n * g)).epsilon(1e-8));
    CHECK(bernstein_walsh_audit(e, t, z) <= 1.0);
  }
  const ChebPoly one(-1, 1, {1.0});
  CHECK(bernstein_audit(e, one, {0.3}) == 0.0);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  const IntervalSet two = set({{-1, -0.5}, {0.5, 1}});
  const EquilibriumData e2 = solve_equilibrium(two);
  std::vector<double> probes;
  for (const Interval& iv : two.intervals())
    for (int i = 1; i <= 50; ++i) probes.push_back(iv.left + iv.length() * i / 51.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> c(21);
    for (double& v : c) v = nd(rng);
    const ChebPoly p(-1, 1, c);
    CHECK(bernstein_audit(e2, p, probes) <= 1.001);
    CHECK(bernstein_walsh_audit(e2, p, 2.0) <= 1.001);
  }
  CHECK_THROWS_AS(bernstein_walsh_audit(e2, one, 0.7), InvalidInput);
}

TEST_CASE("arccos grid") {
  const auto g = arccos_grid(set({{-1, 1}, {2, 3}}), 5);
  REQUIRE(g.size() == 10);
  CHECK(g.front() == -1.0);
  CHECK(g[4] == 1.0);
  CHECK(g[2] == doctest::Approx(0.0).scale(1.0));
  CHECK(g[5] == 2.0);
}
