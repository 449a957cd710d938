#ifndef CHAOSKIT_HENON_HPP
#define CHAOSKIT_HENON_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaoskit/core.hpp"
#include "chaoskit/math.hpp"

// The quadratic planar diffeomorphism
//
//   T(x, y) = (y + 1 - a x^2, b x)
//
// with its three-map decomposition T''' T'' T', the closed-form inverse,
// fixed points with eigenvalues and manifold slopes, and an empirical
// classifier for the behavior regimes of the a-parameter line.

namespace chaoskit {

using Mat2 = std::array<std::array<double, 2>, 2>;

struct HenonParams {
  double a = 1.4;
  double b = 0.3;

  // The canonical domain of study is a > 0, 0 < |b| < 1; only what breaks
  // an operation (a <= 0, non-finite) is rejected here so edge parameters
  // like b = 1 remain inspectable.
  bool valid() const {
    return a > 0.0 && std::isfinite(a) && std::isfinite(b);
  }
};

/// Raised when an orbit leaves the bounded region (or overflows). Carries
/// the iterates completed before the escape.
struct EscapeError : std::runtime_error {
  std::size_t steps_completed;
  std::vector<Point2> prefix;

  EscapeError(std::string what, std::size_t steps, std::vector<Point2> pts)
      : std::runtime_error(std::move(what)),
        steps_completed(steps),
        prefix(std::move(pts)) {}
};

/// Raised by the inverse map when b = 0 collapses the plane onto a line.
struct NonInvertibleError : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

inline void require_valid(const HenonParams& p) {
  if (!p.valid()) {
    throw std::domain_error("henon: params require finite values, a > 0");
  }
}

// Orbits reaching this norm are treated as escaping to infinity; bounded
// regimes of the studied parameter range live inside a unit-scale box.
constexpr double kEscapeNorm = 100.0;

}  // namespace detail

/// Bend: (x, y) -> (x, y + 1 - a x^2). First stage of the decomposition.
inline Point2 bend(const Point2& p, const HenonParams& params) {
  return {p.x, p.y + 1.0 - params.a * p.x * p.x};
}

/// Contraction along x: (x, y) -> (b x, y). Second stage.
inline Point2 contract_x(const Point2& p, const HenonParams& params) {
  return {params.b * p.x, p.y};
}

/// Axis swap: (x, y) -> (y, x). Third stage.
inline Point2 swap_axes(const Point2& p) { return {p.y, p.x}; }

/// Direct map T(x, y) = (y + 1 - a x^2, b x).
inline Point2 henon_step(const Point2& p, const HenonParams& params) {
  detail::require_valid(params);
  if (!is_finite(p)) {
    throw std::domain_error("henon_step: non-finite input");
  }
  Point2 next{p.y + 1.0 - params.a * p.x * p.x, params.b * p.x};
  if (!is_finite(next)) {
    throw EscapeError("henon_step: iterate overflowed", 0, {p});
  }
  return next;
}

/// Composition T''' T'' T'. The stage formulas reuse the direct map's
/// expressions verbatim, so this equals henon_step bit for bit.
inline Point2 henon_step_decomposed(const Point2& p, const HenonParams& params) {
  detail::require_valid(params);
  if (!is_finite(p)) {
    throw std::domain_error("henon_step_decomposed: non-finite input");
  }
  Point2 next = swap_axes(contract_x(bend(p, params), params));
  if (!is_finite(next)) {
    throw EscapeError("henon_step_decomposed: iterate overflowed", 0, {p});
  }
  return next;
}

/// Inverse map T^{-1}(x', y') = (y'/b, x' - 1 + (a/b^2) y'^2).
inline Point2 henon_inverse(const Point2& p, const HenonParams& params) {
  detail::require_valid(params);
  if (params.b == 0.0) {
    throw NonInvertibleError("henon_inverse: b = 0 is not invertible");
  }
  if (!is_finite(p)) {
    throw std::domain_error("henon_inverse: non-finite input");
  }
  const double x_prev = p.y / params.b;
  const double y_prev =
      p.x - 1.0 + (params.a / (params.b * params.b)) * p.y * p.y;
  return {x_prev, y_prev};
}

/// Analytic Jacobian [[-2 a x, 1], [b, 0]] of the direct map.
inline Mat2 henon_jacobian(const Point2& p, const HenonParams& params) {
  detail::require_valid(params);
  return {{{-2.0 * params.a * p.x, 1.0}, {params.b, 0.0}}};
}

/// Constant Jacobian determinant -b (the map contracts area by |b|).
inline double jacobian_det(const HenonParams& params) {
  detail::require_valid(params);
  return -params.b;
}

/// A fixed point with its linearization: real eigenvalue pair (when the
/// eigenvalue discriminant a^2 x^2 + b is nonnegative) and the invariant
/// manifold slopes p_i = b / lambda_i.
struct HenonFixedPoint {
  Point2 location;
  std::optional<std::array<double, 2>> eigenvalues;  // (+root, -root) order
  std::optional<std::array<double, 2>> slopes;       // b / eigenvalue
  PointStability stability = PointStability::nonhyperbolic;
};

namespace detail {

inline PointStability classify_pair(double m1, double m2) {
  const double h1 = std::abs(m1) - 1.0;
  const double h2 = std::abs(m2) - 1.0;
  if (std::abs(h1) <= kHyperbolicBand || std::abs(h2) <= kHyperbolicBand) {
    return PointStability::nonhyperbolic;
  }
  if (h1 < 0.0 && h2 < 0.0) return PointStability::attracting;
  if (h1 > 0.0 && h2 > 0.0) return PointStability::repelling;
  return PointStability::saddle;
}

}  // namespace detail

/// Both fixed points T(p) = p, solved from a x^2 + (1 - b) x - 1 = 0 with
/// the cancellation-safe quadratic form; larger-x point first. Complex
/// roots (impossible for a > 0) would yield an empty list.
inline std::vector<HenonFixedPoint> fixed_points(const HenonParams& params) {
  detail::require_valid(params);
  const double one_minus_b = 1.0 - params.b;
  if (one_minus_b * one_minus_b + 4.0 * params.a < 0.0) {
    return {};
  }
  const auto roots = quadratic_roots(params.a, one_minus_b, -1.0);
  std::vector<HenonFixedPoint> result;
  result.reserve(2);
  for (const auto& root : roots) {
    HenonFixedPoint fp;
    const double x = root.real();
    fp.location = {x, params.b * x};
    const double disc = params.a * params.a * x * x + params.b;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      const double l1 = -params.a * x + s;
      const double l2 = -params.a * x - s;
      fp.eigenvalues = {{l1, l2}};
      fp.slopes = {{params.b / l1, params.b / l2}};
      fp.stability = detail::classify_pair(l1, l2);
    } else {
      // Complex pair: common modulus sqrt(|det|) = sqrt(|b|) decides.
      const double mod = std::sqrt(std::abs(params.b));
      fp.stability = detail::classify_pair(mod, mod);
    }
    result.push_back(fp);
  }
  return result;
}

enum class RegimeLabel { escape, fixed_point, periodic, strange_attractor };

inline const char* to_string(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::escape: return "escape";
    case RegimeLabel::fixed_point: return "fixed_point";
    case RegimeLabel::periodic: return "periodic";
    case RegimeLabel::strange_attractor: return "strange_attractor";
  }
  return "unknown";
}

/// Empirical regime of one parameter point, plus the closed-form
/// thresholds a0 = (1-b)^2/4 (birth of the fixed points) and
/// a1 = 3(1-b)^2/4 (loss of stability) for the given b.
struct RegimeReport {
  RegimeLabel label = RegimeLabel::escape;
  double a0 = 0.0;
  double a1 = 0.0;
  std::optional<int> period;  // set when label == periodic
};

namespace detail {

// Post-transient behavior thresholds for the classifier.
constexpr double kFixedPointDiameter = 1e-6;
constexpr double kPeriodTol = 1e-6;
constexpr int kRegimePeriodCap = 32;

inline std::optional<int> closest_return_period(const std::vector<Point2>& pts) {
  const Tolerance tol{kPeriodTol, 0.0};
  for (int n = 1; n <= kRegimePeriodCap; ++n) {
    if (pts.size() <= static_cast<std::size_t>(n)) break;
    bool all = true;
    for (std::size_t k = 0; k + n < pts.size(); ++k) {
      if (!approx_eq(pts[k].x, pts[k + n].x, tol) ||
          !approx_eq(pts[k].y, pts[k + n].y, tol)) {
        all = false;
        break;
      }
    }
    if (all) return n;
  }
  return std::nullopt;
}

}  // namespace detail

/// Iterate n_transient + n_probe steps from x0 and label what the probe
/// window settles on: escape (norm beyond 100 or overflow), a fixed point
/// (probe diameter < 1e-6), a periodic set (closest-return period <= 32 at
/// tolerance 1e-6), or a strange attractor (bounded, aperiodic).
inline RegimeReport classify_regime(const HenonParams& params, const Point2& x0,
                                    std::size_t n_transient,
                                    std::size_t n_probe) {
  detail::require_valid(params);
  if (n_probe < 64) {
    throw std::domain_error("classify_regime: n_probe must be >= 64");
  }
  RegimeReport report;
  const double omb = 1.0 - params.b;
  report.a0 = omb * omb / 4.0;
  report.a1 = 3.0 * omb * omb / 4.0;
  report.label = RegimeLabel::escape;

  Point2 p = x0;
  std::vector<Point2> probe;
  probe.reserve(n_probe);
  try {
    for (std::size_t i = 0; i < n_transient + n_probe; ++i) {
      if (norm(p) > detail::kEscapeNorm) return report;
      p = henon_step(p, params);
      if (i >= n_transient) probe.push_back(p);
    }
    if (norm(p) > detail::kEscapeNorm) return report;
  } catch (const EscapeError&) {
    return report;
  }

  double xmin = probe[0].x, xmax = probe[0].x;
  double ymin = probe[0].y, ymax = probe[0].y;
  for (const auto& q : probe) {
    xmin = std::min(xmin, q.x);
    xmax = std::max(xmax, q.x);
    ymin = std::min(ymin, q.y);
    ymax = std::max(ymax, q.y);
  }
  if (std::hypot(xmax - xmin, ymax - ymin) < detail::kFixedPointDiameter) {
    report.label = RegimeLabel::fixed_point;
    return report;
  }
  if (auto period = detail::closest_return_period(probe)) {
    report.label = RegimeLabel::periodic;
    report.period = period;
    return report;
  }
  report.label = RegimeLabel::strange_attractor;
  return report;
}

/// The n iterates following the transient, starting with the first
/// post-transient state. Escape mid-run raises EscapeError whose payload
/// carries the completed prefix.
inline std::vector<Point2> attractor_cloud(const HenonParams& params,
                                           const Point2& x0,
                                           std::size_t n_transient,
                                           std::size_t n) {
  detail::require_valid(params);
  if (n < 1) {
    throw std::domain_error("attractor_cloud: n must be >= 1");
  }
  std::vector<Point2> cloud;
  cloud.reserve(n);
  Point2 p = x0;
  for (std::size_t i = 0; i < n_transient + n; ++i) {
    if (norm(p) > detail::kEscapeNorm) {
      throw EscapeError("attractor_cloud: orbit escaped at iterate " +
                            std::to_string(i),
                        i, std::move(cloud));
    }
    if (i >= n_transient) {
      cloud.push_back(p);
      if (cloud.size() == n) break;
    }
    try {
      p = henon_step(p, params);
    } catch (const EscapeError&) {
      throw EscapeError("attractor_cloud: orbit escaped at iterate " +
                            std::to_string(i + 1),
                        i + 1, std::move(cloud));
    }
  }
  return cloud;
}

}  // namespace chaoskit

#endif  // CHAOSKIT_HENON_HPP
