#ifndef CHAOSKIT_LOGISTIC_HPP
#define CHAOSKIT_LOGISTIC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chaoskit/core.hpp"

// The quadratic family f(x) = a x (1 - x) on [0, 1]: fixed and periodic
// points with multipliers, the period-doubling cascade onsets, and
// bifurcation-diagram data. The a > 4 escape regime lives in escape.hpp.

namespace chaoskit {

inline double logistic_step(double x, double a) {
  if (!std::isfinite(x)) {
    throw std::domain_error("logistic_step: non-finite input");
  }
  return a * x * (1.0 - x);
}

/// f'(x) = a (1 - 2x).
inline double logistic_deriv(double x, double a) { return a * (1.0 - 2.0 * x); }

inline double logistic_iterate(double x, double a, int n) {
  if (n < 0) {
    throw std::domain_error("logistic_iterate: n must be >= 0");
  }
  for (int k = 0; k < n; ++k) x = logistic_step(x, a);
  return x;
}

/// A prime-period-n cycle: its points sorted ascending, the multiplier
/// (f^n)' = product of f' over the cycle, and the resulting stability.
struct PeriodicOrbitReport {
  int period = 1;
  std::vector<double> points;
  double multiplier = 0.0;
  PointStability stability = PointStability::nonhyperbolic;
};

/// Onsets (period 2^k, a-value where that cycle becomes stable), k >= 1.
struct CascadeRecord {
  std::vector<std::pair<int, double>> onsets;
};

namespace detail {

inline double cycle_multiplier(const std::vector<double>& points, double a) {
  double m = 1.0;
  for (const double x : points) m *= logistic_deriv(x, a);
  return m;
}

// Newton refinement of a root of f^n(x) - x; the derivative of that
// function is the cycle multiplier minus one, so the iteration is well
// conditioned away from tangencies (multiplier near +1).
inline double polish_cycle_point(double x, double a, int n) {
  for (int it = 0; it < 12; ++it) {
    double y = x, dm = 1.0;
    for (int k = 0; k < n; ++k) {
      dm *= logistic_deriv(y, a);
      y = logistic_step(y, a);
    }
    const double dh = dm - 1.0;
    if (dh == 0.0) break;
    const double step = (y - x) / dh;
    x -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return x;
}

constexpr int kGridCells = 1 << 16;   // sign-scan resolution on [0, 1]
constexpr double kBisectWidth = 1e-12;
constexpr double kPrimeTol = 1e-9;    // proper-divisor elimination
constexpr int kPeriodCap = 12;

}  // namespace detail

/// Period-1 reports from the closed forms: x = 0 always (f' = a), and
/// x = (a-1)/a once it lies in [0, 1] (f' = 2 - a).
inline std::vector<PeriodicOrbitReport> fixed_points(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::domain_error("fixed_points: a must be positive");
  }
  std::vector<PeriodicOrbitReport> reports;
  PeriodicOrbitReport zero;
  zero.period = 1;
  zero.points = {0.0};
  zero.multiplier = a;
  zero.stability = classify_multiplier(a);
  reports.push_back(zero);
  const double xstar = (a - 1.0) / a;
  if (a >= 1.0 && xstar > 0.0) {
    PeriodicOrbitReport star;
    star.period = 1;
    star.points = {xstar};
    star.multiplier = 2.0 - a;
    star.stability = classify_multiplier(star.multiplier);
    reports.push_back(star);
  }
  return reports;
}

/// Every prime-period-n cycle in [0, 1], found by sign-scanning
/// f^n(x) - x on a uniform 2^16-cell grid, bisecting each bracket to
/// 1e-12, discarding roots whose prime period properly divides n, and
/// grouping the survivors into cycles by iteration. Cycles are ordered by
/// their smallest point.
inline std::vector<PeriodicOrbitReport> find_periodic_orbits(double a, int n) {
  if (n < 1 || n > detail::kPeriodCap) {
    throw std::domain_error("find_periodic_orbits: period cap is 1..12");
  }
  if (!(a > 0.0 && a <= 4.0) || !std::isfinite(a)) {
    throw std::domain_error("find_periodic_orbits: need 0 < a <= 4");
  }
  const auto h = [a, n](double x) { return logistic_iterate(x, a, n) - x; };

  std::vector<double> roots;
  double prev_x = 0.0;
  double prev_h = h(0.0);
  if (prev_h == 0.0) roots.push_back(0.0);
  for (int j = 1; j <= detail::kGridCells; ++j) {
    const double x = static_cast<double>(j) / detail::kGridCells;
    const double hx = h(x);
    if (hx == 0.0) {
      roots.push_back(x);
    } else if (prev_h != 0.0 && (prev_h < 0.0) != (hx < 0.0)) {
      double lo = prev_x, hi = x, h_lo = prev_h;
      while (hi - lo > detail::kBisectWidth) {
        const double mid = 0.5 * (lo + hi);
        const double hm = h(mid);
        if (hm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((hm < 0.0) == (h_lo < 0.0)) {
          lo = mid;
          h_lo = hm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_h = hx;
  }

  // Merge numerically coincident brackets, then drop non-prime periods.
  std::vector<double> prime_roots;
  for (const double r : roots) {
    if (!prime_roots.empty() && r - prime_roots.back() < 4.0 * detail::kBisectWidth) {
      continue;
    }
    bool prime = true;
    for (int d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      if (std::abs(logistic_iterate(r, a, d) - r) < detail::kPrimeTol) {
        prime = false;
        break;
      }
    }
    if (prime) prime_roots.push_back(r);
  }

  // Group into cycles: walk the orbit of the smallest unused root, polish
  // each iterate back onto the root set, and mark the visited roots.
  std::vector<char> used(prime_roots.size(), 0);
  std::vector<PeriodicOrbitReport> reports;
  for (std::size_t i = 0; i < prime_roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<double> cycle;
    double y = detail::polish_cycle_point(prime_roots[i], a, n);
    for (int k = 0; k < n; ++k) {
      cycle.push_back(y);
      const auto it =
          std::lower_bound(prime_roots.begin(), prime_roots.end(), y);
      for (const auto cand : {it, it == prime_roots.begin() ? it : it - 1}) {
        if (cand != prime_roots.end() &&
            std::abs(*cand - y) < 1e-7) {
          used[cand - prime_roots.begin()] = 1;
        }
      }
      y = detail::polish_cycle_point(logistic_step(y, a), a, n);
    }
    std::sort(cycle.begin(), cycle.end());
    PeriodicOrbitReport report;
    report.period = n;
    report.points = std::move(cycle);
    report.multiplier = detail::cycle_multiplier(report.points, a);
    report.stability = classify_multiplier(report.multiplier);
    reports.push_back(std::move(report));
  }

  // Two starting roots can reconstruct the same cycle if an iterate failed
  // to match its root; keep the first of any duplicate pair.
  std::vector<PeriodicOrbitReport> unique;
  for (auto& rep : reports) {
    bool dup = false;
    for (const auto& kept : unique) {
      bool same = true;
      for (int k = 0; k < n; ++k) {
        if (std::abs(rep.points[k] - kept.points[k]) > 1e-9) {
          same = false;
          break;
        }
      }
      if (same) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(std::move(rep));
  }
  std::sort(unique.begin(), unique.end(),
            [](const PeriodicOrbitReport& l, const PeriodicOrbitReport& r) {
              return l.points.front() < r.points.front();
            });
  return unique;
}

namespace detail {

// Multiplier of the cascade cycle of period p at parameter a: of the prime
// cycles found, the one with multiplier nearest -1 (in the cascade range
// that cycle is unique; the rule only disambiguates the two fixed points).
inline std::optional<double> cascade_multiplier(double a, int p) {
  const auto orbits = find_periodic_orbits(a, p);
  if (orbits.empty()) return std::nullopt;
  double best = orbits.front().multiplier;
  for (const auto& orbit : orbits) {
    if (std::abs(orbit.multiplier + 1.0) < std::abs(best + 1.0)) {
      best = orbit.multiplier;
    }
  }
  return best;
}

// Newton continuation of one cycle point for periods beyond the root-scan
// cap. Seeded from the attracting window of the cycle via the critical
// orbit, then carried along the parameter axis probe by probe.
struct CycleTracker {
  int period = 0;
  double x = 0.5;
  bool live = false;

  bool seed(double a, int p) {
    period = p;
    double y = 0.5;
    for (int k = 0; k < 300000; ++k) y = logistic_step(y, a);
    y = polish_cycle_point(y, a, p);
    live = std::abs(logistic_iterate(y, a, p) - y) < 1e-10;
    if (live) x = y;
    return live;
  }

  std::optional<double> multiplier(double a) {
    if (!live) return std::nullopt;
    x = polish_cycle_point(x, a, period);
    if (std::abs(logistic_iterate(x, a, period) - x) > 1e-8) {
      live = false;
      return std::nullopt;
    }
    double y = x, m = 1.0;
    for (int k = 0; k < period; ++k) {
      m *= logistic_deriv(y, a);
      y = logistic_step(y, a);
    }
    return m;
  }
};

constexpr double kFeigenbaumDelta = 4.669;  // onset-spacing contraction rate

}  // namespace detail

/// Flip-bifurcation onsets of the period-doubling cascade: for each
/// k = 1..k_max, the a-value where the period-2^(k-1) cycle's multiplier
/// crosses -1 and period 2^k becomes stable, located by bisection to 1e-9.
/// Periods above the root-scan cap are followed by Newton continuation
/// inside a window predicted from the preceding onset gap. A cycle whose
/// crossing cannot be bracketed inside [a_lo, a_hi] ends the record early.
inline CascadeRecord cascade_scan(double a_lo, double a_hi, int k_max) {
  if (!(1.0 < a_lo && a_lo < a_hi && a_hi <= 4.0)) {
    throw std::domain_error("cascade_scan: need 1 < a_lo < a_hi <= 4");
  }
  if (k_max < 1 || k_max > 6) {
    throw std::domain_error("cascade_scan: k_max cap is 1..6");
  }
  CascadeRecord record;
  for (int k = 1; k <= k_max; ++k) {
    const int p = 1 << (k - 1);  // the cycle losing stability
    double w_lo, w_hi;
    int scan_steps = 64;
    detail::CycleTracker tracker;
    const bool tracked = p > detail::kPeriodCap;  // p = 16, 32
    if (k == 1) {
      w_lo = a_lo;
      w_hi = a_hi;
    } else if (!tracked) {
      w_lo = record.onsets.back().second + 1e-4;
      w_hi = a_hi;
    } else {
      // Window from the Feigenbaum-contracted onset spacing.
      if (record.onsets.size() < 2) break;
      const double prev = record.onsets.back().second;
      const double gap = prev - record.onsets[record.onsets.size() - 2].second;
      const double predicted = gap / detail::kFeigenbaumDelta;
      w_lo = prev + 0.05 * predicted;
      w_hi = std::min(a_hi, prev + 2.5 * predicted);
      scan_steps = 32;
      if (w_lo >= w_hi || !tracker.seed(prev + 0.4 * predicted, p)) break;
    }
    if (w_lo >= w_hi) break;

    auto multiplier_at = [&](double a) {
      return tracked ? tracker.multiplier(a) : detail::cascade_multiplier(a, p);
    };

    // Bracket the -1 crossing on a coarse walk, then bisect.
    bool have_lo = false, have_hi = false;
    double lo = w_lo, hi = w_hi;
    for (int i = 0; i <= scan_steps; ++i) {
      const double a =
          w_lo + (w_hi - w_lo) * static_cast<double>(i) / scan_steps;
      const auto m = multiplier_at(a);
      if (!m) continue;
      if (*m > -1.0) {
        lo = a;
        have_lo = true;
      } else if (have_lo) {
        hi = a;
        have_hi = true;
        break;
      }
    }
    if (!have_lo || !have_hi) break;
    while (hi - lo > 1e-9) {
      const double mid = 0.5 * (lo + hi);
      const auto m = multiplier_at(mid);
      if (m && *m > -1.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    record.onsets.emplace_back(2 * p, 0.5 * (lo + hi));
  }
  return record;
}

/// Long-format bifurcation data: for each a on the inclusive uniform grid,
/// the n_keep iterates following an n_transient warm-up from x0.
inline std::vector<std::pair<double, std::vector<double>>> bifurcation_diagram(
    double a_lo, double a_hi, int n_params, int n_transient, int n_keep,
    double x0) {
  if (n_params < 2) {
    throw std::domain_error("bifurcation_diagram: n_params must be >= 2");
  }
  if (!(x0 > 0.0 && x0 < 1.0)) {
    throw std::domain_error("bifurcation_diagram: x0 must lie in (0, 1)");
  }
  if (n_transient < 0 || n_keep < 1) {
    throw std::domain_error("bifurcation_diagram: negative window");
  }
  std::vector<std::pair<double, std::vector<double>>> columns;
  columns.reserve(n_params);
  for (int i = 0; i < n_params; ++i) {
    const double a =
        a_lo + (a_hi - a_lo) * static_cast<double>(i) / (n_params - 1);
    double x = x0;
    for (int k = 0; k < n_transient; ++k) x = logistic_step(x, a);
    std::vector<double> kept;
    kept.reserve(n_keep);
    for (int k = 0; k < n_keep; ++k) {
      x = logistic_step(x, a);
      kept.push_back(x);
    }
    columns.emplace_back(a, std::move(kept));
  }
  return columns;
}

/// Number of gap-separated clusters in a diagram column (sorted copy,
/// split where neighbors differ by more than gap).
inline int cluster_count(std::vector<double> values, double gap = 1e-4) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  int clusters = 1;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] - values[i - 1] > gap) ++clusters;
  }
  return clusters;
}

/// Existence of prime periods 1..7 at parameter a. Defined only where a
/// period-3 cycle exists, in which case every entry must come back true.
inline std::map<int, bool> forcing_spot_check(double a) {
  if (find_periodic_orbits(a, 3).empty()) {
    throw std::domain_error("forcing_spot_check: no period-3 cycle at this a");
  }
  std::map<int, bool> existence;
  for (int n = 1; n <= 7; ++n) {
    existence[n] = !find_periodic_orbits(a, n).empty();
  }
  return existence;
}

}  // namespace chaoskit

#endif  // CHAOSKIT_LOGISTIC_HPP
