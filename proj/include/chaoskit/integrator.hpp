#ifndef CHAOSKIT_INTEGRATOR_HPP
#define CHAOSKIT_INTEGRATOR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "chaoskit/core.hpp"

// Fixed-step explicit integrators for autonomous systems x' = F(x). The
// workhorse is the two-stage predictor/corrector scheme
//
//   P    = X + F(X) dt                    (Euler predictor)
//   X'   = X + [F(X) + F(P)] dt / 2       (trapezoidal corrector)
//
// which is algebraically the mean of X and two chained Euler steps:
// X' = (X + Euler(Euler(X))) / 2.

namespace chaoskit {

/// Uniform time grid: n_steps steps of size dt starting at t0.
struct StepPlan {
  double t0 = 0.0;
  double dt = 0.01;
  std::size_t n_steps = 1;

  bool valid() const {
    return dt > 0.0 && n_steps >= 1 && std::isfinite(t0) && std::isfinite(dt);
  }
};

/// Thrown when a step produces a non-finite sample. Carries the failing
/// step index and every sample computed before it.
template <class State>
struct IntegrationFailure : std::runtime_error {
  std::size_t step_index;
  Orbit<State> partial;

  IntegrationFailure(std::size_t idx, Orbit<State> orbit)
      : std::runtime_error("integration produced a non-finite state at step " +
                           std::to_string(idx)),
        step_index(idx),
        partial(std::move(orbit)) {}
};

namespace detail {

template <class State>
void require_finite_step(const State& before, const State& after,
                         std::size_t step_index) {
  if (!is_finite(after)) {
    Orbit<State> stub;
    stub.samples.push_back(before);
    throw IntegrationFailure<State>(step_index, std::move(stub));
  }
}

}  // namespace detail

/// One forward-Euler step of x' = f(x).
template <class State, class Rhs>
State euler_step(Rhs&& f, const State& x, double dt) {
  State next = x + dt * f(x);
  detail::require_finite_step(x, next, 0);
  return next;
}

/// One predictor/corrector step (second order).
template <class State, class Rhs>
State double_approx_step(Rhs&& f, const State& x, double dt) {
  const State k1 = f(x);
  const State p = x + dt * k1;
  const State k2 = f(p);
  State next = x + (0.5 * dt) * (k1 + k2);
  detail::require_finite_step(x, next, 0);
  return next;
}

/// Integrate x' = f(x) over the plan with the predictor/corrector step.
/// Returns an orbit of n_steps + 1 samples (initial state included). On a
/// non-finite step, throws IntegrationFailure whose payload holds the step
/// index and the orbit truncated at the last finite sample.
template <class State, class Rhs>
Orbit<State> integrate(Rhs&& f, const State& x0, const StepPlan& plan) {
  if (!plan.valid()) {
    throw std::domain_error(
        "integrate: step plan requires dt > 0 and n_steps >= 1");
  }
  if (!is_finite(x0)) {
    throw std::domain_error("integrate: non-finite initial state");
  }
  Orbit<State> orbit;
  orbit.t0 = plan.t0;
  orbit.dt = plan.dt;
  orbit.samples.reserve(plan.n_steps + 1);
  orbit.samples.push_back(x0);
  State x = x0;
  for (std::size_t i = 0; i < plan.n_steps; ++i) {
    try {
      x = double_approx_step(f, x, plan.dt);
    } catch (const IntegrationFailure<State>&) {
      throw IntegrationFailure<State>(i + 1, std::move(orbit));
    }
    orbit.samples.push_back(x);
  }
  return orbit;
}

}  // namespace chaoskit

#endif  // CHAOSKIT_INTEGRATOR_HPP
