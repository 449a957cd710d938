#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "chaoskit/lorenz.hpp"

using namespace chaoskit;

namespace {

Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = m[i][j];
  return out;
}

// Eigenvalues of the linearization at s, sorted by descending real part
// (+imag first within a conjugate pair) to match the library's order.
std::array<std::complex<double>, 3> oracle_eigenvalues(const State3& s,
                                                       const LorenzParams& p) {
  const Eigen::EigenSolver<Eigen::Matrix3d> solver(to_eigen(jacobian(s, p)));
  std::array<std::complex<double>, 3> roots;
  for (int i = 0; i < 3; ++i) roots[i] = solver.eigenvalues()[i];
  std::sort(roots.begin(), roots.end(),
            [](const std::complex<double>& u, const std::complex<double>& v) {
              if (u.real() != v.real()) return u.real() > v.real();
              return u.imag() > v.imag();
            });
  return roots;
}

}  // namespace

TEST_CASE("right-hand side matches the defining equations", "[lorenz]") {
  const LorenzParams p;
  const State3 s{1.0, 2.0, 3.0};
  const State3 v = lorenz_rhs(s, p);
  CHECK(v.x == Catch::Approx(-10.0 * 1.0 + 10.0 * 2.0).margin(1e-15));
  CHECK(v.y == Catch::Approx(-1.0 * 3.0 + 28.0 * 1.0 - 2.0).margin(1e-15));
  CHECK(v.z == Catch::Approx(1.0 * 2.0 - (8.0 / 3.0) * 3.0).margin(1e-15));

  // The flow factory must evaluate identically.
  const auto f = flow(p);
  const State3 w = f(s);
  CHECK(w.x == v.x);
  CHECK(w.y == v.y);
  CHECK(w.z == v.z);
}

TEST_CASE("parameter validation rejects degenerate systems", "[lorenz]") {
  LorenzParams p;
  p.sigma = 0.0;
  CHECK_THROWS_AS(lorenz_rhs(State3{}, p), std::domain_error);
  p = LorenzParams{};
  p.b = -1.0;
  CHECK_THROWS_AS(flow(p), std::domain_error);
  CHECK_THROWS_AS(lorenz_rhs(State3{1.0, 1.0,
                                    std::numeric_limits<double>::infinity()},
                             LorenzParams{}),
                  std::domain_error);
}

TEST_CASE("equilibria are zeros of the flow", "[lorenz]") {
  const LorenzParams p;
  const auto reports = equilibria(p);
  REQUIRE(reports.size() == 3);

  // Order: origin, + branch, - branch; coordinates +-sqrt(72) and r-1.
  const double w = std::sqrt(72.0);
  CHECK(reports[0].location.x == 0.0);
  CHECK(reports[0].location.y == 0.0);
  CHECK(reports[0].location.z == 0.0);
  CHECK(reports[1].location.x == Catch::Approx(w).margin(1e-12));
  CHECK(reports[1].location.y == Catch::Approx(w).margin(1e-12));
  CHECK(reports[1].location.z == Catch::Approx(27.0).margin(1e-12));
  CHECK(reports[2].location.x == Catch::Approx(-w).margin(1e-12));
  CHECK(reports[2].location.y == Catch::Approx(-w).margin(1e-12));
  CHECK(reports[2].location.z == Catch::Approx(27.0).margin(1e-12));

  for (const auto& eq : reports) {
    const State3 v = lorenz_rhs(eq.location, p);
    CHECK(std::abs(v.x) < 1e-12);
    CHECK(std::abs(v.y) < 1e-12);
    CHECK(std::abs(v.z) < 1e-12);
  }

  // Below r = 1 only the origin exists.
  LorenzParams sub;
  sub.r = 0.5;
  CHECK(equilibria(sub).size() == 1);
}

TEST_CASE("jacobian agrees with central finite differences", "[lorenz]") {
  const LorenzParams p;
  const double h = 1e-6;
  for (int k = 0; k < 20; ++k) {
    const State3 s{-15.0 + 1.7 * k, 20.0 - 2.1 * k, 2.0 + 2.3 * k};
    const Mat3 jac = jacobian(s, p);
    for (int j = 0; j < 3; ++j) {
      State3 plus = s, minus = s;
      (j == 0 ? plus.x : j == 1 ? plus.y : plus.z) += h;
      (j == 0 ? minus.x : j == 1 ? minus.y : minus.z) -= h;
      const State3 fp = lorenz_rhs(plus, p);
      const State3 fm = lorenz_rhs(minus, p);
      const double col[3] = {(fp.x - fm.x) / (2.0 * h),
                             (fp.y - fm.y) / (2.0 * h),
                             (fp.z - fm.z) / (2.0 * h)};
      for (int i = 0; i < 3; ++i) {
        CHECK(jac[i][j] == Catch::Approx(col[i]).margin(1e-5));
      }
    }
  }
}

TEST_CASE("origin spectrum factors the characteristic polynomial", "[lorenz]") {
  const LorenzParams p;
  const auto spec = char_poly_origin(p);
  CHECK(spec.linear_root == Catch::Approx(-8.0 / 3.0).margin(1e-15));
  CHECK(spec.quad_coeffs[0] == 1.0);
  CHECK(spec.quad_coeffs[1] == Catch::Approx(11.0).margin(1e-15));
  CHECK(spec.quad_coeffs[2] == Catch::Approx(-270.0).margin(1e-13));
  CHECK(spec.discriminant == Catch::Approx(121.0 + 4.0 * 270.0).margin(1e-10));
  CHECK(spec.all_roots_real);
  CHECK(spec.has_positive_root);  // r > 1

  const double root_hi = (-11.0 + std::sqrt(1201.0)) / 2.0;
  const double root_lo = (-11.0 - std::sqrt(1201.0)) / 2.0;
  CHECK(spec.quad_roots[0].real() == Catch::Approx(root_hi).margin(1e-10));
  CHECK(spec.quad_roots[1].real() == Catch::Approx(root_lo).margin(1e-10));

  // Stable regime: no positive root once r < 1.
  LorenzParams sub;
  sub.r = 0.5;
  const auto stable = char_poly_origin(sub);
  CHECK_FALSE(stable.has_positive_root);
  CHECK(stable.all_roots_real);
  CHECK(stable.quad_roots[0].real() < 0.0);
}

TEST_CASE("origin eigenvalues match an independent eigensolver", "[lorenz]") {
  const LorenzParams p;
  const auto reports = equilibria(p);
  const auto oracle = oracle_eigenvalues(State3{0.0, 0.0, 0.0}, p);
  const auto& mine = reports[0].eigen_summary.roots;
  for (int i = 0; i < 3; ++i) {
    CHECK(mine[i].real() == Catch::Approx(oracle[i].real()).margin(1e-9));
    CHECK(mine[i].imag() == Catch::Approx(oracle[i].imag()).margin(1e-9));
  }
  CHECK(reports[0].eigen_summary.unstable_count == 1);
  CHECK(reports[0].eigen_summary.label == FlowStability::unstable);
  CHECK(reports[0].eigen_summary.all_real);

  // Expanded cubic = (lambda + b)(lambda^2 + 11 lambda - 270).
  CHECK(reports[0].char_coeffs[0] == 1.0);
  CHECK(reports[0].char_coeffs[1] == Catch::Approx(41.0 / 3.0).margin(1e-12));
  CHECK(reports[0].char_coeffs[2] == Catch::Approx(-722.0 / 3.0).margin(1e-11));
  CHECK(reports[0].char_coeffs[3] == Catch::Approx(-720.0).margin(1e-11));
}

TEST_CASE("nontrivial characteristic cubic and its spectrum", "[lorenz]") {
  const LorenzParams p;
  const auto cubic = char_poly_nontrivial(p);
  CHECK(cubic[0] == 1.0);
  CHECK(cubic[1] == Catch::Approx(41.0 / 3.0).margin(1e-12));
  CHECK(cubic[2] == Catch::Approx(304.0 / 3.0).margin(1e-11));
  CHECK(cubic[3] == Catch::Approx(1440.0).margin(1e-10));

  LorenzParams sub;
  sub.r = 0.9;
  CHECK_THROWS_AS(char_poly_nontrivial(sub), std::domain_error);

  // Cross-check the full spectrum against Eigen at both branch points.
  const auto reports = equilibria(p);
  for (std::size_t k = 1; k <= 2; ++k) {
    const auto oracle = oracle_eigenvalues(reports[k].location, p);
    const auto& mine = reports[k].eigen_summary.roots;
    for (int i = 0; i < 3; ++i) {
      CHECK(mine[i].real() == Catch::Approx(oracle[i].real()).margin(1e-8));
      CHECK(mine[i].imag() == Catch::Approx(oracle[i].imag()).margin(1e-8));
    }
  }
  // Canonical r = 28 lies beyond the critical value: spiral instability.
  CHECK(reports[1].eigen_summary.label == FlowStability::unstable);
  CHECK(reports[1].eigen_summary.unstable_count == 2);
  CHECK_FALSE(reports[1].eigen_summary.all_real);
}

TEST_CASE("critical parameter for loss of spiral stability", "[lorenz]") {
  CHECK(critical_r(LorenzParams{}) ==
        Catch::Approx(470.0 / 19.0).margin(1e-12));

  LorenzParams other;
  other.sigma = 16.0;
  other.b = 4.0;
  CHECK(critical_r(other) == Catch::Approx(16.0 * 23.0 / 11.0).margin(1e-12));

  LorenzParams singular;
  singular.sigma = 1.0 + 8.0 / 3.0;  // sigma - b - 1 = 0
  CHECK_THROWS_AS(critical_r(singular), SingularParameterError);
}

TEST_CASE("branch equilibria flip stability at the critical parameter",
          "[lorenz]") {
  LorenzParams p;

  p.r = critical_r(LorenzParams{}) - 0.1;
  CHECK(equilibria(p)[1].eigen_summary.label == FlowStability::stable);

  p.r = critical_r(LorenzParams{}) + 0.1;
  CHECK(equilibria(p)[1].eigen_summary.label == FlowStability::unstable);

  // At criticality the complex pair sits on the imaginary axis.
  p.r = critical_r(LorenzParams{});
  const auto roots = equilibria(p)[1].eigen_summary.roots;
  CHECK(std::abs(roots[0].real()) < 1e-8);
  CHECK(std::abs(roots[1].real()) < 1e-8);
  CHECK(roots[0].imag() > 0.0);
  CHECK(roots[2].real() < -13.0);  // the strongly contracting real root

  const auto oracle = oracle_eigenvalues(equilibria(p)[1].location, p);
  CHECK(std::abs(oracle[0].real()) < 1e-9);
}

TEST_CASE("separation experiment contrasts chaotic and stable regimes",
          "[lorenz]") {
  const StepPlan plan{0.0, 0.01, 2500};

  // Identical twins never separate.
  const auto zero = divergence_experiment(LorenzParams{}, State3{0.0, 1.0, 0.0},
                                          0.0, plan);
  REQUIRE(zero.size() == 2501);
  for (const auto& [t, s] : zero) CHECK(s == 0.0);

  // Canonical parameters: the cold start spends a long stretch spiraling
  // near the negative branch point, so growth over t <= 25 is modest but
  // still two orders of magnitude.
  const auto grow = divergence_experiment(LorenzParams{}, State3{0.0, 1.0, 0.0},
                                          1e-8, plan);
  REQUIRE(grow.size() == 2501);
  CHECK(grow.front().first == 0.0);
  CHECK(grow.front().second == Catch::Approx(1e-8).epsilon(1e-12));
  CHECK(grow.back().first == Catch::Approx(25.0).margin(1e-9));
  CHECK(grow.back().second / grow.front().second > 1e2);

  // From a point on the attractor the growth is explosive.
  const auto warm = integrate(flow(LorenzParams{}), State3{0.0, 1.0, 0.0},
                              StepPlan{0.0, 0.01, 3000});
  const auto fast = divergence_experiment(LorenzParams{}, warm.samples.back(),
                                          1e-8, plan);
  CHECK(fast.back().second / fast.front().second > 1e4);

  // Globally stable regime: separation decays monotonically to nothing.
  LorenzParams stable;
  stable.r = 0.5;
  const auto decay = divergence_experiment(stable, State3{0.0, 1.0, 0.0},
                                           1e-6, StepPlan{0.0, 0.01, 2000});
  CHECK(decay.front().second == Catch::Approx(1e-6).epsilon(1e-12));
  for (std::size_t i = 1; i < decay.size(); ++i) {
    CHECK(decay[i].second <= decay[i - 1].second);
  }
  CHECK(decay.back().second < 1e-10);

  CHECK_THROWS_AS(divergence_experiment(LorenzParams{}, State3{}, -1e-8, plan),
                  std::domain_error);
}
