#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ptk/config.hpp"

namespace ptk {

struct Interval {
  double left = 0.0;
  double right = 0.0;

  double length() const { return right - left; }
  bool degenerate() const { return left == right; }
  bool contains(double x) const { return left <= x && x <= right; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A compact subset of the real line given as finitely many ordered,
/// pairwise disjoint closed intervals. Instances are immutable and always
/// satisfy right_j < left_{j+1}.
class IntervalSet {
 public:
  /// The empty set; only useful as a placeholder to assign into.
  IntervalSet() = default;
  /// Sorts, validates and merges overlapping or touching pieces.
  static IntervalSet normalize(std::span<const std::pair<double, double>> raw);
  static IntervalSet normalize(std::span<const Interval> raw);

  const std::vector<Interval>& intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }

  double min() const { return intervals_.front().left; }
  double max() const { return intervals_.back().right; }
  bool has_degenerate() const;
  bool contains(double x) const;
  /// Index of the interval containing x, if any.
  std::optional<std::size_t> component_of(double x) const;
  double total_length() const;

  /// Lengths of the bounded complementary gaps, left to right.
  std::vector<double> gap_lengths() const;

  /// Grow every singleton to an interval of length eps centred on it,
  /// merging where that creates overlaps.
  IntervalSet widen(double eps) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  explicit IntervalSet(std::vector<Interval> iv) : intervals_(std::move(iv)) {}
  std::vector<Interval> intervals_;
};

/// The distinguished right endpoint `a` together with the radius rho of the
/// interval condition [a-2rho, a] in K, (a, a+2rho) disjoint from K.
struct EndpointContext {
  double a = 0.0;
  double rho = 0.0;
  std::size_t component = 0;  // index of the interval whose right end is a
};

/// Maximal rho for the interval condition at a. Throws InvalidInput when a
/// is not a right endpoint or the interval ending at a is a singleton.
EndpointContext check_interval_condition(const IntervalSet& k, double a);

/// Same, with a caller-chosen smaller radius. Throws if rho_override is not
/// in (0, maximal rho].
EndpointContext check_interval_condition(const IntervalSet& k, double a, double rho_override);

/// Outer approximant K_m^+: all bounded gaps are filled except m-1 retained
/// ones. The gap to the right of a is always retained; the rest are taken by
/// descending length, leftmost first on ties.
IntervalSet outer_approx(const IntervalSet& k, const EndpointContext& ctx, int m);

/// Level-`level` prefractal of the Cantor construction on [0,1] in which
/// every interval keeps two end pieces of relative length `ratio`.
IntervalSet cantor_set(int level, double ratio, const NumericConfig& cfg = {});

/// Exact point-set inclusion k ⊆ s.
bool is_subset(const IntervalSet& k, const IntervalSet& s);

}  // namespace ptk
