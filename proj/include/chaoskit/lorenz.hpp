#ifndef CHAOSKIT_LORENZ_HPP
#define CHAOSKIT_LORENZ_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chaoskit/core.hpp"
#include "chaoskit/integrator.hpp"
#include "chaoskit/math.hpp"

// The Lorenz convection system
//
//   X' = -sigma X + sigma Y
//   Y' = -X Z + r X - Y
//   Z' =  X Y - b Z
//
// with its equilibria, linearization, characteristic polynomials, the
// critical Rayleigh parameter of the subcritical Hopf point, and the
// twin-trajectory separation experiment.

namespace chaoskit {

using Mat3 = std::array<std::array<double, 3>, 3>;

struct LorenzParams {
  double sigma = 10.0;
  double r = 28.0;
  double b = 8.0 / 3.0;

  bool valid() const {
    return sigma > 0.0 && b > 0.0 && std::isfinite(sigma) &&
           std::isfinite(r) && std::isfinite(b);
  }
};

/// Raised when a formula is evaluated at a pole of its parameter domain.
struct SingularParameterError : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

inline void require_valid(const LorenzParams& p) {
  if (!p.valid()) {
    throw std::domain_error("lorenz: params require sigma > 0, b > 0, finite r");
  }
}

}  // namespace detail

inline State3 lorenz_rhs(const State3& s, const LorenzParams& p) {
  detail::require_valid(p);
  if (!is_finite(s)) {
    throw std::domain_error("lorenz_rhs: non-finite state");
  }
  return {-p.sigma * s.x + p.sigma * s.y,
          -s.x * s.z + p.r * s.x - s.y,
          s.x * s.y - p.b * s.z};
}

/// Callable right-hand side for the integrator.
inline auto flow(const LorenzParams& p) {
  detail::require_valid(p);
  return [p](const State3& s) { return lorenz_rhs(s, p); };
}

inline Mat3 jacobian(const State3& s, const LorenzParams& p) {
  detail::require_valid(p);
  if (!is_finite(s)) {
    throw std::domain_error("jacobian: non-finite state");
  }
  return {{{-p.sigma, p.sigma, 0.0},
           {p.r - s.z, -1.0, -s.x},
           {s.y, s.x, -p.b}}};
}

/// Factored spectrum at the origin: the linearization's characteristic
/// polynomial splits as [lambda + b][lambda^2 + (sigma+1) lambda +
/// sigma(1-r)]. One quadratic root is positive exactly when r > 1.
struct OriginSpectrum {
  double linear_root = 0.0;                    // -b
  std::array<double, 3> quad_coeffs{};         // (1, sigma+1, sigma(1-r))
  double discriminant = 0.0;                   // of the quadratic factor
  bool all_roots_real = false;                 // discriminant >= 0
  bool has_positive_root = false;              // iff r > 1
  std::array<std::complex<double>, 2> quad_roots{};
};

inline OriginSpectrum char_poly_origin(const LorenzParams& p) {
  detail::require_valid(p);
  OriginSpectrum spec;
  spec.linear_root = -p.b;
  spec.quad_coeffs = {1.0, p.sigma + 1.0, p.sigma * (1.0 - p.r)};
  spec.discriminant =
      spec.quad_coeffs[1] * spec.quad_coeffs[1] - 4.0 * spec.quad_coeffs[2];
  spec.all_roots_real = spec.discriminant >= 0.0;
  spec.has_positive_root = p.r > 1.0;  // root product sigma(1-r) < 0
  spec.quad_roots =
      quadratic_roots(spec.quad_coeffs[0], spec.quad_coeffs[1], spec.quad_coeffs[2]);
  return spec;
}

/// Monic characteristic cubic (1, c2, c1, c0) at the nontrivial equilibria,
/// defined only for r > 1 where those equilibria exist.
inline std::array<double, 4> char_poly_nontrivial(const LorenzParams& p) {
  detail::require_valid(p);
  if (p.r <= 1.0) {
    throw std::domain_error(
        "char_poly_nontrivial: nontrivial equilibria require r > 1");
  }
  return {1.0, p.sigma + p.b + 1.0, (p.r + p.sigma) * p.b,
          2.0 * p.sigma * p.b * (p.r - 1.0)};
}

/// Rayleigh parameter at which the nontrivial equilibria lose stability:
/// r = sigma (sigma + b + 3) / (sigma - b - 1).
inline double critical_r(const LorenzParams& p) {
  detail::require_valid(p);
  const double denom = p.sigma - p.b - 1.0;
  if (denom == 0.0) {
    throw SingularParameterError("critical_r: sigma - b - 1 = 0");
  }
  return p.sigma * (p.sigma + p.b + 3.0) / denom;
}

enum class FlowStability { stable, unstable, marginal };

inline const char* to_string(FlowStability s) {
  switch (s) {
    case FlowStability::stable: return "stable";
    case FlowStability::unstable: return "unstable";
    case FlowStability::marginal: return "marginal";
  }
  return "unknown";
}

/// Root classification of a linearization: eigenvalues ordered by
/// descending real part, with sign counts of the real parts.
struct EigenSummary {
  std::array<std::complex<double>, 3> roots{};
  bool all_real = false;
  int unstable_count = 0;  // roots with positive real part
  FlowStability label = FlowStability::marginal;
};

namespace detail {

// Real parts within this band of zero are treated as marginal rather than
// forced to a sign; keeps the label honest at bifurcation parameters.
constexpr double kRealPartBand = 1e-9;

inline EigenSummary summarize_roots(const std::array<std::complex<double>, 3>& roots) {
  EigenSummary summary;
  summary.roots = roots;
  summary.all_real = true;
  int negative = 0;
  for (const auto& root : roots) {
    if (root.imag() != 0.0) summary.all_real = false;
    if (root.real() > kRealPartBand) ++summary.unstable_count;
    if (root.real() < -kRealPartBand) ++negative;
  }
  if (summary.unstable_count > 0) {
    summary.label = FlowStability::unstable;
  } else if (negative == 3) {
    summary.label = FlowStability::stable;
  } else {
    summary.label = FlowStability::marginal;
  }
  return summary;
}

}  // namespace detail

/// An equilibrium with its characteristic cubic and spectrum.
struct EquilibriumReport {
  State3 location;
  std::array<double, 4> char_coeffs{};  // monic: (1, c2, c1, c0)
  EigenSummary eigen_summary;
};

/// All equilibria: the origin always; for r > 1 also the symmetric pair
/// (+-sqrt(b(r-1)), +-sqrt(b(r-1)), r-1). Order: origin, +branch, -branch.
inline std::vector<EquilibriumReport> equilibria(const LorenzParams& p) {
  detail::require_valid(p);
  std::vector<EquilibriumReport> reports;

  EquilibriumReport origin;
  origin.location = {0.0, 0.0, 0.0};
  // Expanded product of the factored origin polynomial.
  origin.char_coeffs = {1.0, p.sigma + 1.0 + p.b,
                        p.sigma * (1.0 - p.r) + p.b * (p.sigma + 1.0),
                        p.b * p.sigma * (1.0 - p.r)};
  origin.eigen_summary = detail::summarize_roots(cubic_roots(
      origin.char_coeffs[1], origin.char_coeffs[2], origin.char_coeffs[3]));
  reports.push_back(origin);

  if (p.r > 1.0) {
    const double w = std::sqrt(p.b * (p.r - 1.0));
    const auto cubic = char_poly_nontrivial(p);
    const auto summary =
        detail::summarize_roots(cubic_roots(cubic[1], cubic[2], cubic[3]));
    for (const double sign : {1.0, -1.0}) {
      EquilibriumReport eq;
      eq.location = {sign * w, sign * w, p.r - 1.0};
      eq.char_coeffs = cubic;
      eq.eigen_summary = summary;
      reports.push_back(eq);
    }
  }
  return reports;
}

/// Twin-trajectory experiment: integrate s0 and s0 + (delta0, 0, 0) in
/// lockstep and report the Euclidean separation at every sample time.
inline std::vector<std::pair<double, double>> divergence_experiment(
    const LorenzParams& p, const State3& s0, double delta0,
    const StepPlan& plan) {
  detail::require_valid(p);
  if (!(delta0 >= 0.0) || !std::isfinite(delta0)) {
    throw std::domain_error("divergence_experiment: delta0 must be >= 0");
  }
  const auto f = flow(p);
  const Orbit<State3> a = integrate(f, s0, plan);
  const Orbit<State3> b = integrate(f, State3{s0.x + delta0, s0.y, s0.z}, plan);
  std::vector<std::pair<double, double>> separation;
  separation.reserve(a.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    separation.emplace_back(a.time_at(i), norm(a.samples[i] - b.samples[i]));
  }
  return separation;
}

}  // namespace chaoskit

#endif  // CHAOSKIT_LORENZ_HPP
