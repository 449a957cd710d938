#ifndef CHAOSKIT_POINCARE_HPP
#define CHAOSKIT_POINCARE_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chaoskit/core.hpp"

// Surface-of-section machinery: intersect a sampled flow trajectory with an
// oriented plane, pair consecutive crossings into an empirical return map,
// and test the induced map for periodicity by closest return.

namespace chaoskit {

/// Which sign change of g(s) = normal.s - offset counts as a crossing.
enum class CrossingDirection { positive, negative, both };

inline const char* to_string(CrossingDirection d) {
  switch (d) {
    case CrossingDirection::positive: return "positive";
    case CrossingDirection::negative: return "negative";
    case CrossingDirection::both: return "both";
  }
  return "unknown";
}

/// Oriented plane {s : normal.s = offset} with unit normal.
struct SectionPlane {
  State3 normal{0.0, 0.0, 1.0};
  double offset = 0.0;
  CrossingDirection direction = CrossingDirection::positive;
};

/// Normalizing factory: accepts any nonzero normal and rescales the pair
/// (normal, offset) so the normal has unit length.
inline SectionPlane make_plane(const State3& normal, double offset,
                               CrossingDirection direction) {
  if (!is_finite(normal) || !std::isfinite(offset)) {
    throw std::domain_error("make_plane: non-finite plane data");
  }
  const double len = norm(normal);
  if (len == 0.0) {
    throw std::domain_error("make_plane: zero normal");
  }
  return {normal * (1.0 / len), offset / len, direction};
}

/// One intersection of the trajectory with the plane.
struct SectionPoint {
  State3 location;
  double t = 0.0;
  std::size_t index = 0;  // ordinal of the crossing, in time order
};

/// Raised where an operation needs more data points than were supplied.
struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Samples with |g| below this count as lying exactly on the plane; such a
// sample yields one crossing, attributed to the interval that ends at it.
constexpr double kOnPlaneBand = 1e-14;

inline double plane_gap(const SectionPlane& plane, const State3& s) {
  return plane.normal.x * s.x + plane.normal.y * s.y + plane.normal.z * s.z -
         plane.offset;
}

inline bool direction_accepts(CrossingDirection dir, bool upward) {
  switch (dir) {
    case CrossingDirection::positive: return upward;
    case CrossingDirection::negative: return !upward;
    case CrossingDirection::both: return true;
  }
  return false;
}

}  // namespace detail

/// All plane crossings of the orbit, in time order. Each crossing is
/// located by inverse-linear interpolation of g(s) = normal.s - offset
/// between the bracketing samples.
inline std::vector<SectionPoint> section(const Orbit<State3>& orbit,
                                         const SectionPlane& plane) {
  if (!orbit.has_dt()) {
    throw std::domain_error("section: orbit lacks a recorded dt");
  }
  if (orbit.samples.size() < 2) {
    throw std::domain_error("section: need at least two samples");
  }
  std::vector<SectionPoint> points;
  for (std::size_t i = 0; i + 1 < orbit.samples.size(); ++i) {
    const double ga = detail::plane_gap(plane, orbit.samples[i]);
    const double gb = detail::plane_gap(plane, orbit.samples[i + 1]);
    const bool a_on = std::abs(ga) < detail::kOnPlaneBand;
    const bool b_on = std::abs(gb) < detail::kOnPlaneBand;
    if (a_on) continue;  // counted by the previous interval (or leading)
    double theta;
    bool upward;
    if (b_on) {
      theta = 1.0;  // crossing lands exactly on sample i+1
      upward = ga < 0.0;
    } else if ((ga < 0.0) == (gb < 0.0)) {
      continue;  // no sign change
    } else {
      theta = ga / (ga - gb);
      upward = ga < 0.0;
    }
    if (!detail::direction_accepts(plane.direction, upward)) continue;
    SectionPoint p;
    p.location = orbit.samples[i] +
                 theta * (orbit.samples[i + 1] - orbit.samples[i]);
    p.t = orbit.time_at(i) + theta * orbit.dt;
    p.index = points.size();
    points.push_back(p);
  }
  return points;
}

/// Consecutive crossing pairs (p_i, p_{i+1}): the empirical return map.
inline std::vector<std::pair<SectionPoint, SectionPoint>> return_map(
    const std::vector<SectionPoint>& points) {
  if (points.size() < 2) {
    throw InsufficientDataError("return_map: need at least two crossings");
  }
  std::vector<std::pair<SectionPoint, SectionPoint>> pairs;
  pairs.reserve(points.size() - 1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    pairs.emplace_back(points[i], points[i + 1]);
  }
  return pairs;
}

/// Smallest n <= max_n with p_0 matching p_n componentwise under tol, the
/// match persisting for every available shifted pair (p_k, p_{k+n}).
/// Absence of a period is a value, not an error.
inline std::optional<int> detect_period(const std::vector<SectionPoint>& points,
                                        const Tolerance& tol, int max_n) {
  if (points.empty()) {
    throw std::domain_error("detect_period: no section points");
  }
  if (max_n < 1) {
    throw std::domain_error("detect_period: max_n must be >= 1");
  }
  auto matches = [&](const State3& u, const State3& v) {
    return approx_eq(u.x, v.x, tol) && approx_eq(u.y, v.y, tol) &&
           approx_eq(u.z, v.z, tol);
  };
  for (int n = 1; n <= max_n; ++n) {
    if (points.size() <= static_cast<std::size_t>(n)) break;
    bool all = true;
    for (std::size_t k = 0; k + n < points.size(); ++k) {
      if (!matches(points[k].location, points[k + n].location)) {
        all = false;
        break;
      }
    }
    if (all) return n;
  }
  return std::nullopt;
}

}  // namespace chaoskit

#endif  // CHAOSKIT_POINCARE_HPP
