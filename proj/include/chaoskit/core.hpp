#ifndef CHAOSKIT_CORE_HPP
#define CHAOSKIT_CORE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Shared value types used by every module: phase-space points, orbits and
// the tolerance record that all floating-point comparisons go through.

namespace chaoskit {

/// Absolute + relative comparison band. At least one part must be positive.
struct Tolerance {
  double abs = 0.0;
  double rel = 0.0;

  bool valid() const {
    return abs >= 0.0 && rel >= 0.0 && (abs + rel) > 0.0 &&
           std::isfinite(abs) && std::isfinite(rel);
  }
};

/// True iff |u - v| <= tol.abs + tol.rel * max(|u|, |v|).
/// Throws std::domain_error on non-finite input or an invalid tolerance.
inline bool approx_eq(double u, double v, const Tolerance& tol) {
  if (!std::isfinite(u) || !std::isfinite(v)) {
    throw std::domain_error("approx_eq: non-finite input");
  }
  if (!tol.valid()) {
    throw std::domain_error("approx_eq: invalid tolerance");
  }
  const double scale = std::max(std::abs(u), std::abs(v));
  return std::abs(u - v) <= tol.abs + tol.rel * scale;
}

/// A point (X, Y, Z) of a three-dimensional phase space.
struct State3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline State3 operator+(const State3& a, const State3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline State3 operator-(const State3& a, const State3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline State3 operator*(const State3& a, double c) {
  return {a.x * c, a.y * c, a.z * c};
}
inline State3 operator*(double c, const State3& a) { return a * c; }

inline double norm(const State3& s) {
  return std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z);
}

inline bool is_finite(const State3& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.z);
}

/// A point (x, y) of the plane.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(const Point2& a, const Point2& b) {
  return {a.x + b.x, a.y + b.y};
}
inline Point2 operator-(const Point2& a, const Point2& b) {
  return {a.x - b.x, a.y - b.y};
}
inline Point2 operator*(const Point2& a, double c) {
  return {a.x * c, a.y * c};
}
inline Point2 operator*(double c, const Point2& a) { return a * c; }

inline double norm(const Point2& p) {
  return std::sqrt(p.x * p.x + p.y * p.y);
}

inline bool is_finite(const Point2& p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

inline bool is_finite(double v) { return std::isfinite(v); }

/// An ordered, gap-free sequence of flow samples. samples[i] is the state
/// at time t0 + i*dt. Map iterates are stored as plain vectors elsewhere;
/// dt > 0 only for flows.
template <class State>
struct Orbit {
  std::vector<State> samples;
  double t0 = 0.0;
  double dt = 0.0;

  bool has_dt() const { return dt > 0.0; }
  double time_at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
};

/// Stability of a fixed or periodic point of a map, from |multiplier| vs 1.
enum class PointStability { attracting, repelling, saddle, nonhyperbolic };

namespace detail {

// |multiplier| within this band of 1 is reported as nonhyperbolic rather
// than forced to a side; keeps labels honest at bifurcation parameters.
constexpr double kHyperbolicBand = 1e-9;

}  // namespace detail

/// Stability of a 1-D multiplier m: attracting |m| < 1, repelling |m| > 1.
inline PointStability classify_multiplier(double m) {
  const double h = std::abs(m) - 1.0;
  if (std::abs(h) <= detail::kHyperbolicBand) return PointStability::nonhyperbolic;
  return h < 0.0 ? PointStability::attracting : PointStability::repelling;
}

inline const char* to_string(PointStability s) {
  switch (s) {
    case PointStability::attracting: return "attracting";
    case PointStability::repelling: return "repelling";
    case PointStability::saddle: return "saddle";
    case PointStability::nonhyperbolic: return "nonhyperbolic";
  }
  return "unknown";
}

}  // namespace chaoskit

#endif  // CHAOSKIT_CORE_HPP
