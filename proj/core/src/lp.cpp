#include "ptk/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "ptk/errors.hpp"

namespace ptk {

namespace {

std::optional<LuFactorization> factor_reference(const Matrix& rows, const std::vector<std::size_t>& ref,
                                                const NumericConfig& cfg) {
  const std::size_t d = ref.size();
  Matrix b(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t r = 0; r < d; ++r) b(r, i) = rows(ref[i], r);
  try {
    return LuFactorization(std::move(b), cfg);
  } catch (const NumericalFailure&) {
    return std::nullopt;
  }
}

std::vector<std::size_t> spread(std::size_t grid, std::size_t d) {
  std::vector<std::size_t> s(d);
  for (std::size_t i = 0; i < d; ++i)
    s[i] = d == 1 ? grid / 2 : static_cast<std::size_t>(std::llround(
                                   static_cast<double>(i) * static_cast<double>(grid - 1) /
                                   static_cast<double>(d - 1)));
  return s;
}

bool distinct_in_range(std::vector<std::size_t> s, std::size_t grid) {
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end() && (s.empty() || s.back() < grid);
}

}  // namespace

LPResult lp_maximize(const LPProblem& problem, const NumericConfig& cfg,
                     const std::vector<std::size_t>& start) {
  const std::size_t d = problem.objective.size();
  const std::size_t g = problem.points.size();
  const Matrix& a = problem.constraints;
  if (d == 0) throw InvalidInput("lp_maximize: empty objective");
  if (a.rows() != g || a.cols() != d) throw InvalidInput("lp_maximize: constraint matrix shape");
  if (g < d) throw NumericalFailure("lp_maximize: unbounded relaxation (fewer points than unknowns)");

  std::vector<std::size_t> ref;
  std::optional<LuFactorization> lu;
  if (start.size() == d && distinct_in_range(start, g)) {
    ref = start;
    lu = factor_reference(a, ref, cfg);
  }
  if (!lu) {
    ref = spread(g, d);
    if (distinct_in_range(ref, g)) lu = factor_reference(a, ref, cfg);
  }
  if (!lu) throw NumericalFailure("lp_maximize: unbounded relaxation (constraint rows do not span)");

  const std::vector<double>& c = problem.objective;
  std::vector<double> sigma(d, 1.0);
  std::vector<char> in_ref(g, 0);
  for (std::size_t i : ref) in_ref[i] = 1;

  const int cap = cfg.lp_iter_factor * static_cast<int>(d + 1);
  std::vector<double> s(g);
  LPResult res;
  for (int iter = 0;; ++iter) {
    std::vector<double> y = lu->solve(c);
    double ynorm = 0.0;
    for (double v : y) ynorm += std::abs(v);
    const double tiny = 1e-14 * std::max(ynorm, 1e-300);
    for (std::size_t i = 0; i < d; ++i)
      if (std::abs(y[i]) > tiny) sigma[i] = y[i] > 0.0 ? 1.0 : -1.0;
    const std::vector<double> p = lu->solve_transposed(sigma);

    std::size_t enter = g;
    double worst = 0.0, vmax = 0.0;
    for (std::size_t k = 0; k < g; ++k) {
      double v = 0.0;
      const auto row = a.row(k);
      for (std::size_t r = 0; r < d; ++r) v += row[r] * p[r];
      s[k] = v;
      vmax = std::max(vmax, std::abs(v));
      if (!in_ref[k] && std::abs(v) > worst) {
        worst = std::abs(v);
        enter = k;
      }
    }
    if (vmax <= 1.0 + cfg.lp_gap_tol || enter == g) {
      const double scale = 1.0 / std::max(1.0, vmax);
      res.coeffs.resize(d);
      res.value = 0.0;
      for (std::size_t r = 0; r < d; ++r) {
        res.coeffs[r] = p[r] * scale;
        res.value += c[r] * res.coeffs[r];
      }
      for (std::size_t k = 0; k < g; ++k)
        if (std::abs(s[k]) * scale >= 1.0 - 1e-9) res.active.push_back(problem.points[k]);
      res.iterations = iter;
      res.max_violation = vmax;
      res.reference = ref;
      return res;
    }
    if (iter >= cap) {
      std::ostringstream msg;
      msg << "lp_maximize: exchange cap of " << cap << " iterations exceeded (max violation "
          << vmax << ")";
      throw NumericalFailure(msg.str());
    }

    // entering point: y(t) = y - t * sign_e * dvec, y_enter = sign_e * t
    const double sign_e = s[enter] > 0.0 ? 1.0 : -1.0;
    std::vector<double> col(d);
    for (std::size_t r = 0; r < d; ++r) col[r] = a(enter, r);
    const std::vector<double> dvec = lu->solve(col);

    struct Break {
      double t;
      double inc;
      std::size_t idx;
    };
    std::vector<Break> breaks;
    double slope = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double delta = sign_e * dvec[i];
      if (std::abs(y[i]) <= tiny) {
        if (delta != 0.0) breaks.push_back({0.0, std::abs(delta), i});
        continue;
      }
      slope -= (y[i] > 0.0 ? 1.0 : -1.0) * delta;
      if (delta != 0.0 && (delta > 0.0) == (y[i] > 0.0))
        breaks.push_back({y[i] / delta, 2.0 * std::abs(delta), i});
    }
    std::sort(breaks.begin(), breaks.end(), [](const Break& x, const Break& z) {
      return x.t < z.t || (x.t == z.t && x.inc > z.inc);
    });
    std::optional<std::size_t> leave;
    for (const Break& br : breaks) {
      slope += br.inc;
      if (slope >= 0.0) {
        leave = br.idx;
        break;
      }
    }
    if (!leave) {
      if (breaks.empty()) throw NumericalFailure("lp_maximize: no admissible exchange");
      leave = breaks.back().idx;
    }
    in_ref[ref[*leave]] = 0;
    ref[*leave] = enter;
    in_ref[enter] = 1;
    sigma[*leave] = sign_e;
    auto next = factor_reference(a, ref, cfg);
    if (!next) throw NumericalFailure("lp_maximize: reference became singular");
    lu = std::move(next);
  }
}

}  // namespace ptk
