#ifndef CHAOSKIT_MATH_HPP
#define CHAOSKIT_MATH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

// Small polynomial toolbox: a cancellation-safe quadratic solver and a
// deflation-based monic cubic solver. Both return roots in a fixed,
// reproducible order so downstream reports are deterministic.

namespace chaoskit {

/// Roots of a*x^2 + b*x + c = 0 (a != 0), largest real part first; for a
/// complex pair the positive-imaginary root comes first. Uses the q-form
/// to avoid subtractive cancellation when b^2 >> |4ac|.
inline std::array<std::complex<double>, 2> quadratic_roots(double a, double b,
                                                           double c) {
  if (a == 0.0) {
    throw std::domain_error("quadratic_roots: leading coefficient is zero");
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    double r0, r1;
    if (q != 0.0) {
      r0 = q / a;
      r1 = c / q;
    } else {  // b == 0 and c == 0 (or disc == 0 with b == 0)
      r0 = 0.0;
      r1 = -b / a;  // both roots coincide at -b/2a = 0 here
    }
    if (r0 < r1) std::swap(r0, r1);
    return {std::complex<double>(r0, 0.0), std::complex<double>(r1, 0.0)};
  }
  const double re = -b / (2.0 * a);
  const double im = std::sqrt(-disc) / (2.0 * a);
  const double ai = std::abs(im);
  return {std::complex<double>(re, ai), std::complex<double>(re, -ai)};
}

namespace detail {

inline double cubic_eval(double c2, double c1, double c0, double x) {
  return ((x + c2) * x + c1) * x + c0;
}

inline double cubic_deriv(double c2, double c1, double x) {
  return (3.0 * x + 2.0 * c2) * x + c1;
}

}  // namespace detail

/// All roots of the monic cubic x^3 + c2*x^2 + c1*x + c0 = 0.
///
/// A real root is always present: it is bracketed inside the Cauchy bound
/// 1 + max|ci|, narrowed by bisection, polished by Newton, and the residual
/// quadratic from synthetic division is solved in closed form. Roots are
/// ordered by descending real part (complex pair: +imaginary first), which
/// keeps reports stable across runs.
inline std::array<std::complex<double>, 3> cubic_roots(double c2, double c1,
                                                       double c0) {
  using detail::cubic_deriv;
  using detail::cubic_eval;

  // Bracket one real root. p(-R) <= 0 <= p(R) for the Cauchy bound R.
  const double bound =
      1.0 + std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
  double lo = -bound, hi = bound;
  if (cubic_eval(c2, c1, c0, lo) > 0.0 || cubic_eval(c2, c1, c0, hi) < 0.0) {
    throw std::logic_error("cubic_roots: root bound failed");
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-15 * bound; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cubic_eval(c2, c1, c0, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double r = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {  // Newton polish; bisection already converged
    const double d = cubic_deriv(c2, c1, r);
    if (d == 0.0) break;
    const double step = cubic_eval(c2, c1, c0, r) / d;
    r -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(r))) break;
  }

  // Synthetic division by (x - r): x^2 + b1*x + b0 remains.
  const double b1 = c2 + r;
  const double b0 = c1 + r * b1;
  const auto quad = quadratic_roots(1.0, b1, b0);

  std::array<std::complex<double>, 3> roots = {std::complex<double>(r, 0.0),
                                               quad[0], quad[1]};
  std::sort(roots.begin(), roots.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() > b.imag();
            });
  return roots;
}

}  // namespace chaoskit

#endif  // CHAOSKIT_MATH_HPP
