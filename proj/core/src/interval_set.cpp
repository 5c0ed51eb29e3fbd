#include "ptk/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ptk/errors.hpp"

namespace ptk {

IntervalSet IntervalSet::normalize(std::span<const std::pair<double, double>> raw) {
  std::vector<Interval> iv;
  iv.reserve(raw.size());
  for (const auto& [l, r] : raw) iv.push_back({l, r});
  return normalize(std::span<const Interval>(iv));
}

IntervalSet IntervalSet::normalize(std::span<const Interval> raw) {
  if (raw.empty()) throw InvalidInput("interval set: empty input");
  std::vector<Interval> iv(raw.begin(), raw.end());
  for (const auto& i : iv) {
    if (!std::isfinite(i.left) || !std::isfinite(i.right))
      throw InvalidInput("interval set: non-finite endpoint");
    if (i.left > i.right)
      throw InvalidInput("interval set: left endpoint exceeds right endpoint");
  }
  std::sort(iv.begin(), iv.end(), [](const Interval& x, const Interval& y) {
    return x.left < y.left || (x.left == y.left && x.right < y.right);
  });
  std::vector<Interval> out;
  out.reserve(iv.size());
  for (const auto& i : iv) {
    if (!out.empty() && i.left <= out.back().right) {
      out.back().right = std::max(out.back().right, i.right);
    } else {
      out.push_back(i);
    }
  }
  return IntervalSet(std::move(out));
}

bool IntervalSet::has_degenerate() const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [](const Interval& i) { return i.degenerate(); });
}

std::optional<std::size_t> IntervalSet::component_of(double x) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](double v, const Interval& i) { return v < i.left; });
  if (it == intervals_.begin()) return std::nullopt;
  --it;
  if (x <= it->right) return static_cast<std::size_t>(it - intervals_.begin());
  return std::nullopt;
}

bool IntervalSet::contains(double x) const { return component_of(x).has_value(); }

double IntervalSet::total_length() const {
  double s = 0.0;
  for (const auto& i : intervals_) s += i.length();
  return s;
}

std::vector<double> IntervalSet::gap_lengths() const {
  std::vector<double> g;
  for (std::size_t j = 0; j + 1 < intervals_.size(); ++j)
    g.push_back(intervals_[j + 1].left - intervals_[j].right);
  return g;
}

IntervalSet IntervalSet::widen(double eps) const {
  if (!(eps > 0.0)) throw InvalidInput("widen: eps must be positive");
  std::vector<Interval> iv = intervals_;
  for (auto& i : iv) {
    if (i.degenerate()) {
      i.left -= 0.5 * eps;
      i.right += 0.5 * eps;
    }
  }
  return normalize(std::span<const Interval>(iv));
}

EndpointContext check_interval_condition(const IntervalSet& k, double a) {
  const auto& iv = k.intervals();
  std::optional<std::size_t> hit;
  for (std::size_t j = 0; j < iv.size(); ++j) {
    if (iv[j].right == a) {
      hit = j;
      break;
    }
  }
  if (!hit) {
    const double snap = 1e-12 * (1.0 + std::abs(a));
    for (std::size_t j = 0; j < iv.size(); ++j) {
      if (std::abs(iv[j].right - a) <= snap) {
        hit = j;
        break;
      }
    }
  }
  if (!hit) throw InvalidInput("interval condition: a is not a right endpoint of K");
  const std::size_t j = *hit;
  double rho = 0.5 * iv[j].length();
  if (j + 1 < iv.size()) rho = std::min(rho, 0.5 * (iv[j + 1].left - iv[j].right));
  if (!(rho > 0.0)) throw InvalidInput("interval condition: interval ending at a is degenerate");
  return {iv[j].right, rho, j};
}

EndpointContext check_interval_condition(const IntervalSet& k, double a, double rho_override) {
  EndpointContext ctx = check_interval_condition(k, a);
  if (!(rho_override > 0.0) || rho_override > ctx.rho)
    throw InvalidInput("interval condition: rho override must lie in (0, " +
                       std::to_string(ctx.rho) + "]");
  ctx.rho = rho_override;
  return ctx;
}

IntervalSet outer_approx(const IntervalSet& k, const EndpointContext& ctx, int m) {
  if (m < 2) throw InvalidInput("outer_approx: m must be at least 2");
  const auto& iv = k.intervals();
  const std::size_t gaps = iv.size() - 1;
  const std::size_t keep = static_cast<std::size_t>(m) - 1;
  if (gaps <= keep) return k;

  std::vector<std::size_t> order(gaps);
  for (std::size_t g = 0; g < gaps; ++g) order[g] = g;
  const auto len = [&](std::size_t g) { return iv[g + 1].left - iv[g].right; };
  const std::size_t forced = ctx.component;  // gap right of a, if bounded
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if ((x == forced) != (y == forced)) return x == forced;
    const double lx = len(x), ly = len(y);
    if (std::abs(lx - ly) > 1e-9 * std::max(lx, ly)) return lx > ly;
    return x < y;
  });
  std::vector<bool> retained(gaps, false);
  for (std::size_t r = 0; r < keep; ++r) retained[order[r]] = true;

  std::vector<Interval> out;
  Interval cur = iv.front();
  for (std::size_t g = 0; g < gaps; ++g) {
    if (retained[g]) {
      out.push_back(cur);
      cur = iv[g + 1];
    } else {
      cur.right = iv[g + 1].right;
    }
  }
  out.push_back(cur);
  return IntervalSet::normalize(std::span<const Interval>(out));
}

IntervalSet cantor_set(int level, double ratio, const NumericConfig& cfg) {
  if (!(ratio > 0.0 && ratio < 0.5)) throw InvalidInput("cantor_set: ratio must lie in (0, 1/2)");
  if (level < 0 || level > cfg.cantor_level_cap)
    throw InvalidInput("cantor_set: level outside [0, " + std::to_string(cfg.cantor_level_cap) + "]");
  std::vector<Interval> cur{{0.0, 1.0}};
  for (int l = 0; l < level; ++l) {
    std::vector<Interval> next;
    next.reserve(cur.size() * 2);
    for (const auto& i : cur) {
      const double piece = ratio * i.length();
      next.push_back({i.left, i.left + piece});
      next.push_back({i.right - piece, i.right});
    }
    cur = std::move(next);
  }
  return IntervalSet::normalize(std::span<const Interval>(cur));
}

bool is_subset(const IntervalSet& k, const IntervalSet& s) {
  for (const auto& i : k.intervals()) {
    auto c = s.component_of(i.left);
    if (!c || s[*c].right < i.right) return false;
  }
  return true;
}

}  // namespace ptk
