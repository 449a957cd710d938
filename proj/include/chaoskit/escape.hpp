#ifndef CHAOSKIT_ESCAPE_HPP
#define CHAOSKIT_ESCAPE_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaoskit/core.hpp"
#include "chaoskit/logistic.hpp"

// The a > 4 regime of the quadratic map, where the interval no longer maps
// into itself: the escape interval A0 (points leaving [0,1] in one step),
// finite-level approximations of the invariant Cantor set by iterated
// analytic preimages, first-exit levels, and the expansion condition under
// which the limit set is totally disconnected.

namespace chaoskit {

/// Closed subinterval [lo, hi] of the unit interval.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Sorted, pairwise-disjoint closed subintervals of [0, 1].
struct IntervalSet {
  std::vector<Interval> intervals;

  static IntervalSet from_sorted(std::vector<Interval> list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& iv = list[i];
      if (!(iv.lo <= iv.hi) || iv.lo < 0.0 || iv.hi > 1.0) {
        throw std::invalid_argument("IntervalSet: interval outside [0,1]");
      }
      if (i > 0 && !(iv.lo > list[i - 1].hi)) {
        throw std::invalid_argument("IntervalSet: overlap or zero gap");
      }
    }
    IntervalSet set;
    set.intervals = std::move(list);
    return set;
  }

  std::size_t size() const { return intervals.size(); }

  double total_length() const {
    double sum = 0.0;
    for (const auto& iv : intervals) sum += iv.length();
    return sum;
  }

  double max_length() const {
    double best = 0.0;
    for (const auto& iv : intervals) best = std::max(best, iv.length());
    return best;
  }
};

namespace detail {

inline void require_escaping(double a, const char* who) {
  if (!(a > 4.0) || !std::isfinite(a)) {
    throw std::domain_error(std::string(who) + ": requires a > 4");
  }
}

}  // namespace detail

/// A0 = [(a - sqrt(a(a-4)))/(2a), (a + sqrt(a(a-4)))/(2a)], the set of
/// points whose first image exceeds 1. Both endpoints map exactly to 1.
inline Interval escape_interval(double a) {
  detail::require_escaping(a, "escape_interval");
  const double s = std::sqrt(a * (a - 4.0));
  return {(a - s) / (2.0 * a), (a + s) / (2.0 * a)};
}

/// Which monotone half of the parabola to invert: left is x <= 1/2.
enum class Branch { left, right };

/// Branch inverse of f over a target interval: solves a x (1 - x) = y as
/// x = (1 -+ sqrt(1 - 4y/a))/2. The left branch preserves endpoint order,
/// the right branch reverses it. Targets beyond the branch range (above
/// the parabola peak a/4) have no preimage.
inline std::optional<Interval> preimage(const Interval& target, double a,
                                        Branch branch) {
  detail::require_escaping(a, "preimage");
  if (!(target.lo <= target.hi) || target.lo < 0.0 || target.hi > 1.0) {
    throw std::domain_error("preimage: target must be a subinterval of [0,1]");
  }
  if (target.hi > a / 4.0) return std::nullopt;
  const auto pull = [a, branch](double y) {
    const double root = std::sqrt(1.0 - 4.0 * y / a);
    return branch == Branch::left ? 0.5 * (1.0 - root) : 0.5 * (1.0 + root);
  };
  if (branch == Branch::left) {
    return Interval{pull(target.lo), pull(target.hi)};
  }
  return Interval{pull(target.hi), pull(target.lo)};
}

/// Finite-level Cantor approximations: level 0 is [0,1] minus A0; level n
/// replaces each level-(n-1) interval with its two branch preimages.
/// Returns levels 0..depth; level n holds exactly 2^(n+1) intervals nested
/// inside level n-1.
inline std::vector<IntervalSet> cantor_levels(double a, int depth) {
  detail::require_escaping(a, "cantor_levels");
  if (depth < 0 || depth > 30) {
    throw std::domain_error("cantor_levels: depth cap is 0..30");
  }
  const Interval a0 = escape_interval(a);
  std::vector<IntervalSet> levels;
  levels.reserve(depth + 1);
  levels.push_back(
      IntervalSet::from_sorted({{0.0, a0.lo}, {a0.hi, 1.0}}));
  for (int n = 1; n <= depth; ++n) {
    const auto& prev = levels.back().intervals;
    std::vector<Interval> next;
    next.reserve(2 * prev.size());
    for (const auto& iv : prev) {
      const auto img = preimage(iv, a, Branch::left);
      if (!img) throw std::logic_error("cantor_levels: lost left preimage");
      next.push_back(*img);
    }
    for (auto it = prev.rbegin(); it != prev.rend(); ++it) {
      const auto img = preimage(*it, a, Branch::right);
      if (!img) throw std::logic_error("cantor_levels: lost right preimage");
      next.push_back(*img);
    }
    levels.push_back(IntervalSet::from_sorted(std::move(next)));
  }
  return levels;
}

/// First-exit record: level n means iterates 1..n stayed in [0,1] and
/// iterate n+1 left it; absent level means retained through n_max
/// applications of the map.
struct EscapeReport {
  std::optional<int> level;
  int checked_through = 0;
};

inline EscapeReport escape_time(double x, double a, int n_max) {
  detail::require_escaping(a, "escape_time");
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("escape_time: x must lie in [0,1]");
  }
  if (n_max < 0) {
    throw std::domain_error("escape_time: n_max must be >= 0");
  }
  EscapeReport report;
  report.checked_through = n_max;
  double y = x;
  for (int k = 1; k <= n_max; ++k) {
    y = logistic_step(y, a);
    if (y < 0.0 || y > 1.0) {
      report.level = k - 1;
      return report;
    }
  }
  return report;
}

/// The expansion hypothesis: min over I minus A0 of |f'| equals the value
/// at the A0 endpoints, sqrt(a(a-4)); the hypothesis holds when that
/// exceeds 1, i.e. for a > 2 + sqrt(5).
struct ExpansionReport {
  bool holds = false;
  double min_derivative = 0.0;
};

inline ExpansionReport expansion_check(double a) {
  detail::require_escaping(a, "expansion_check");
  ExpansionReport report;
  report.min_derivative = std::sqrt(a * (a - 4.0));
  report.holds = report.min_derivative > 1.0;
  return report;
}

}  // namespace chaoskit

#endif  // CHAOSKIT_ESCAPE_HPP
