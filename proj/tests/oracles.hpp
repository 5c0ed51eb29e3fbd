#pragma once

// Reference computations that avoid the library's own quadrature and
// solvers, used as independent oracles by the tests.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "ptk/interval_set.hpp"

namespace oracle {

// int_l^r g(t) / sqrt((t-l)(r-t)) dt by the midpoint rule in theta,
// t = mid - half cos(theta); spectrally accurate for smooth g.
inline double chebyshev_weighted(const std::function<double(double)>& g, double l, double r, int n = 4000) {
  const double mid = 0.5 * (l + r), half = 0.5 * (r - l);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += g(mid - half * std::cos(std::numbers::pi * (i + 0.5) / n));
  return s * std::numbers::pi / n;
}

// int_l^r f(t) dt for f with inverse square root endpoint behaviour.
inline double integrate_edges(const std::function<double(double)>& f, double l, double r, int n = 4000) {
  return chebyshev_weighted([&](double t) { return f(t) * std::sqrt((t - l) * (r - t)); }, l, r, n);
}

inline ptk::IntervalSet set(std::vector<std::pair<double, double>> v) { return ptk::IntervalSet::normalize(v); }

// 1..8 intervals in [-5,5], lengths and gaps at least 0.05.
inline std::vector<ptk::IntervalSet> random_sets(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_m(1, 8);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<ptk::IntervalSet> out;
  while (static_cast<int>(out.size()) < count) {
    const int m = pick_m(rng);
    std::vector<double> pts(2 * static_cast<std::size_t>(m));
    for (double& p : pts) p = u(rng);
    std::sort(pts.begin(), pts.end());
    bool ok = true;
    for (std::size_t i = 1; i < pts.size(); ++i) ok = ok && pts[i] - pts[i - 1] >= 0.05;
    if (!ok) continue;
    std::vector<std::pair<double, double>> iv;
    for (int j = 0; j < m; ++j) iv.emplace_back(pts[2 * j], pts[2 * j + 1]);
    out.push_back(set(iv));
  }
  return out;
}

}  // namespace oracle
