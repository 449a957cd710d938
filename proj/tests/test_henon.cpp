#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "chaoskit/henon.hpp"

using namespace chaoskit;

namespace {

// Deterministic probe grid over the attractor's bounding box.
std::vector<Point2> probe_grid() {
  std::vector<Point2> pts;
  pts.reserve(100);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      pts.push_back({-1.5 + i * (3.0 / 9.0), -0.45 + j * (0.9 / 9.0)});
    }
  }
  return pts;
}

}  // namespace

TEST_CASE("map iterates match hand computation", "[henon]") {
  const HenonParams p;  // a = 1.4, b = 0.3
  const Point2 p1 = henon_step(Point2{0.0, 0.0}, p);
  CHECK(p1.x == 1.0);
  CHECK(p1.y == 0.0);
  const Point2 p2 = henon_step(p1, p);
  CHECK(p2.x == Catch::Approx(-0.4).margin(1e-15));
  CHECK(p2.y == Catch::Approx(0.3).margin(1e-15));
  const Point2 p3 = henon_step(p2, p);
  CHECK(p3.x == Catch::Approx(0.3 + 1.0 - 1.4 * 0.16).margin(1e-15));
  CHECK(p3.y == Catch::Approx(-0.12).margin(1e-15));
}

TEST_CASE("parameter validation", "[henon]") {
  CHECK(HenonParams{1.4, 0.3}.valid());
  CHECK(HenonParams{0.2, 1.0}.valid());  // area-preserving edge is inspectable
  CHECK_FALSE(HenonParams{0.0, 0.3}.valid());
  CHECK_FALSE(HenonParams{-1.0, 0.3}.valid());
  CHECK_FALSE(
      HenonParams{std::numeric_limits<double>::quiet_NaN(), 0.3}.valid());
  CHECK_THROWS_AS(henon_step(Point2{0.0, 0.0}, HenonParams{0.0, 0.3}),
                  std::domain_error);
}

TEST_CASE("three-stage decomposition is bit-identical to the direct map",
          "[henon]") {
  const HenonParams p;
  for (const auto& pt : probe_grid()) {
    const Point2 direct = henon_step(pt, p);
    const Point2 staged = henon_step_decomposed(pt, p);
    CHECK(direct.x == staged.x);  // exact: identical expressions
    CHECK(direct.y == staged.y);
  }
  // The stages do what their names say.
  const Point2 q{0.5, -0.2};
  const Point2 bent = bend(q, p);
  CHECK(bent.x == Catch::Approx(0.5).margin(1e-15));
  CHECK(bent.y == Catch::Approx(-0.2 + 1.0 - 1.4 * 0.25).margin(1e-15));
  const Point2 contracted = contract_x(Point2{0.5, 0.45}, p);
  CHECK(contracted.x == Catch::Approx(0.15).margin(1e-16));
  CHECK(contracted.y == 0.45);
  const Point2 swapped = swap_axes(Point2{2.0, 3.0});
  CHECK(swapped.x == 3.0);
  CHECK(swapped.y == 2.0);
}

TEST_CASE("inverse round-trips to machine precision", "[henon]") {
  const HenonParams p;
  for (const auto& pt : probe_grid()) {
    const Point2 fwd = henon_step(pt, p);
    const Point2 back = henon_inverse(fwd, p);
    CHECK(std::abs(back.x - pt.x) < 1e-12);
    CHECK(std::abs(back.y - pt.y) < 1e-12);

    const Point2 pre = henon_inverse(pt, p);
    const Point2 again = henon_step(pre, p);
    CHECK(std::abs(again.x - pt.x) < 1e-12);
    CHECK(std::abs(again.y - pt.y) < 1e-12);
  }
  CHECK_THROWS_AS(henon_inverse(Point2{0.0, 0.0}, HenonParams{1.4, 0.0}),
                  NonInvertibleError);
}

TEST_CASE("jacobian is exact and its determinant is constant", "[henon]") {
  const HenonParams p;
  const double h = 1e-6;
  for (const auto& pt : probe_grid()) {
    const Mat2 jac = henon_jacobian(pt, p);
    CHECK(jac[0][0] == Catch::Approx(-2.8 * pt.x).margin(1e-14));
    CHECK(jac[0][1] == 1.0);
    CHECK(jac[1][0] == 0.3);
    CHECK(jac[1][1] == 0.0);
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    CHECK(std::abs(det - jacobian_det(p)) < 1e-12);
  }
  CHECK(jacobian_det(p) == -0.3);
  // Unit-|b| parameters preserve area and reverse orientation.
  CHECK(jacobian_det(HenonParams{0.2, 1.0}) == -1.0);

  // Finite-difference cross-check at a few probes.
  for (int k = 0; k < 20; ++k) {
    const Point2 pt{-1.2 + 0.12 * k, -0.4 + 0.04 * k};
    const Mat2 jac = henon_jacobian(pt, p);
    const Point2 fx_p = henon_step(Point2{pt.x + h, pt.y}, p);
    const Point2 fx_m = henon_step(Point2{pt.x - h, pt.y}, p);
    const Point2 fy_p = henon_step(Point2{pt.x, pt.y + h}, p);
    const Point2 fy_m = henon_step(Point2{pt.x, pt.y - h}, p);
    CHECK(jac[0][0] ==
          Catch::Approx((fx_p.x - fx_m.x) / (2.0 * h)).margin(1e-5));
    CHECK(jac[1][0] ==
          Catch::Approx((fx_p.y - fx_m.y) / (2.0 * h)).margin(1e-5));
    CHECK(jac[0][1] ==
          Catch::Approx((fy_p.x - fy_m.x) / (2.0 * h)).margin(1e-5));
    CHECK(jac[1][1] ==
          Catch::Approx((fy_p.y - fy_m.y) / (2.0 * h)).margin(1e-5));
  }
}

TEST_CASE("invariant points carry the printed linearization", "[henon]") {
  const HenonParams p;
  const auto fps = fixed_points(p);
  REQUIRE(fps.size() == 2);

  // Larger-x (interior) point first, to full precision.
  CHECK(fps[0].location.x ==
        Catch::Approx(0.631354477089505).margin(1e-12));
  CHECK(fps[0].location.y ==
        Catch::Approx(0.189406343126851).margin(1e-12));
  CHECK(fps[0].location.x > fps[1].location.x);

  for (const auto& fp : fps) {
    // Genuinely invariant.
    const Point2 image = henon_step(fp.location, p);
    CHECK(std::abs(image.x - fp.location.x) < 1e-12);
    CHECK(std::abs(image.y - fp.location.y) < 1e-12);
    // On the y = b x line.
    CHECK(std::abs(fp.location.y - 0.3 * fp.location.x) < 1e-14);
  }

  REQUIRE(fps[0].eigenvalues.has_value());
  REQUIRE(fps[0].slopes.has_value());
  const auto& lam = *fps[0].eigenvalues;
  const auto& slope = *fps[0].slopes;
  CHECK(lam[0] == Catch::Approx(0.15594632).margin(1e-7));
  CHECK(lam[1] == Catch::Approx(-1.92373886).margin(1e-7));
  CHECK(slope[0] == Catch::Approx(1.92373886).margin(1e-7));
  CHECK(slope[1] == Catch::Approx(-0.15594632).margin(1e-7));
  CHECK(lam[0] * lam[1] == Catch::Approx(-0.3).margin(1e-9));
  CHECK(fps[0].stability == PointStability::saddle);
  CHECK(fps[1].stability == PointStability::saddle);

  // Eigen cross-check: both eigenvalues and the eigenvector slopes.
  for (const auto& fp : fps) {
    Eigen::Matrix2d m;
    const Mat2 jac = henon_jacobian(fp.location, p);
    m << jac[0][0], jac[0][1], jac[1][0], jac[1][1];
    const Eigen::EigenSolver<Eigen::Matrix2d> solver(m);
    REQUIRE(fp.eigenvalues.has_value());
    std::array<double, 2> oracle = {solver.eigenvalues()[0].real(),
                                    solver.eigenvalues()[1].real()};
    if (oracle[0] < oracle[1]) std::swap(oracle[0], oracle[1]);
    CHECK((*fp.eigenvalues)[0] == Catch::Approx(oracle[0]).margin(1e-12));
    CHECK((*fp.eigenvalues)[1] == Catch::Approx(oracle[1]).margin(1e-12));
    // (1, p_i) is an eigenvector of the linearization.
    for (int i = 0; i < 2; ++i) {
      const double l = (*fp.eigenvalues)[i];
      const double s = (*fp.slopes)[i];
      CHECK(jac[0][0] * 1.0 + jac[0][1] * s == Catch::Approx(l).margin(1e-12));
      CHECK(jac[1][0] * 1.0 + jac[1][1] * s ==
            Catch::Approx(l * s).margin(1e-12));
    }
  }
}

TEST_CASE("rotational linearizations classify by modulus", "[henon]") {
  // b < 0 makes the discriminant a^2 x^2 + b negative at the interior point.
  const HenonParams p{0.1, -0.5};
  const auto fps = fixed_points(p);
  REQUIRE(fps.size() == 2);
  CHECK_FALSE(fps[0].eigenvalues.has_value());
  CHECK_FALSE(fps[0].slopes.has_value());
  // Complex pair of modulus sqrt(0.5) < 1: attracting spiral.
  CHECK(fps[0].stability == PointStability::attracting);
  // The outer point has a real, saddle linearization.
  REQUIRE(fps[1].eigenvalues.has_value());
  CHECK(fps[1].stability == PointStability::saddle);
}

TEST_CASE("regime sweep reproduces the qualitative table", "[henon]") {
  const Point2 seed{0.0, 0.0};

  const auto fixed = classify_regime(HenonParams{0.2, 0.3}, seed, 1000, 10000);
  CHECK(fixed.label == RegimeLabel::fixed_point);
  CHECK(fixed.a0 == Catch::Approx(0.1225).margin(1e-12));
  CHECK(fixed.a1 == Catch::Approx(0.3675).margin(1e-12));

  const auto periodic = classify_regime(HenonParams{0.5, 0.3}, seed, 1000, 10000);
  CHECK(periodic.label == RegimeLabel::periodic);
  REQUIRE(periodic.period.has_value());
  CHECK(*periodic.period == 2);

  const auto strange = classify_regime(HenonParams{1.4, 0.3}, seed, 1000, 10000);
  CHECK(strange.label == RegimeLabel::strange_attractor);
  CHECK_FALSE(strange.period.has_value());

  const auto escape = classify_regime(HenonParams{1.6, 0.3}, seed, 1000, 10000);
  CHECK(escape.label == RegimeLabel::escape);

  CHECK_THROWS_AS(classify_regime(HenonParams{1.4, 0.3}, seed, 0, 32),
                  std::domain_error);
}

TEST_CASE("attractor cloud is bounded, finite and reproducible", "[henon]") {
  const HenonParams p;
  const auto cloud = attractor_cloud(p, Point2{0.0, 0.0}, 1000, 10000);
  REQUIRE(cloud.size() == 10000);
  for (const auto& pt : cloud) {
    CHECK(is_finite(pt));
    CHECK(pt.x >= -1.5);
    CHECK(pt.x <= 1.5);
    CHECK(pt.y >= -0.45);
    CHECK(pt.y <= 0.45);
  }

  // Without a transient the seed itself is the first recorded point.
  const auto head = attractor_cloud(p, Point2{0.0, 0.0}, 0, 3);
  REQUIRE(head.size() == 3);
  CHECK(head[0].x == 0.0);
  CHECK(head[0].y == 0.0);
  CHECK(head[1].x == 1.0);
  CHECK(head[2].x == Catch::Approx(-0.4).margin(1e-15));

  const auto rerun = attractor_cloud(p, Point2{0.0, 0.0}, 1000, 10000);
  REQUIRE(rerun.size() == cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    CHECK(rerun[i].x == cloud[i].x);
    CHECK(rerun[i].y == cloud[i].y);
  }
}

TEST_CASE("escape carries its prefix out of the failure", "[henon]") {
  bool thrown = false;
  try {
    attractor_cloud(HenonParams{1.6, 0.3}, Point2{0.0, 0.0}, 0, 10000);
  } catch (const EscapeError& e) {
    thrown = true;
    CHECK(e.steps_completed >= 1);
    CHECK(e.prefix.size() <= e.steps_completed + 1);
    for (const auto& pt : e.prefix) {
      CHECK(is_finite(pt));
      CHECK(norm(pt) <= 100.0);
    }
  }
  CHECK(thrown);

  // Single-step overflow reports an escape, not a silent non-finite value.
  CHECK_THROWS_AS(henon_step(Point2{1e200, 0.0}, HenonParams{}), EscapeError);
}
