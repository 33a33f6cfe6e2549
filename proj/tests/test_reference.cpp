#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "vmom/errors.hpp"
#include "vmom/reference.hpp"

using namespace vmom;

TEST_CASE("point vortices induce perpendicular counterclockwise motion") {
  Eigen::VectorXd pos(4);
  pos << 0.0, 0.0, 1.5, 0.0;
  const std::vector<double> masses = {1.0, 2.0};
  const Eigen::VectorXd v = point_vortex_rhs(pos, masses);

  // vortex 0 sees mass 2 at distance 1.5: speed m/(2 pi d), straight down
  const double s0 = 2.0 / (2.0 * std::numbers::pi * 1.5);
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(-s0).epsilon(1e-14));
  // vortex 1 sees mass 1: moves straight up (counterclockwise about 0)
  const double s1 = 1.0 / (2.0 * std::numbers::pi * 1.5);
  CHECK(v[2] == doctest::Approx(0.0));
  CHECK(v[3] == doctest::Approx(+s1).epsilon(1e-14));
}

TEST_CASE("coincident point vortices are rejected") {
  Eigen::VectorXd pos(4);
  pos << 0.3, -0.1, 0.3, -0.1;
  CHECK_THROWS_AS(point_vortex_rhs(pos, {1.0, 1.0}), numeric_error);
}

TEST_CASE("Gaussian cores reduce to point vortices as the width vanishes") {
  Eigen::VectorXd pos(6);
  pos << 0.0, 0.0, 2.0, 0.5, -1.0, 1.5;
  const std::vector<double> masses = {1.0, -0.5, 2.0};
  const std::vector<double> tiny = {1e-12, 1e-12, 1e-12};
  const Eigen::VectorXd vg = gaussian_core_rhs(pos, masses, tiny);
  const Eigen::VectorXd vp = point_vortex_rhs(pos, masses);
  CHECK((vg - vp).lpNorm<Eigen::Infinity>() == 0.0);  // 1 - e^{-huge} == 1
}

TEST_CASE("the Gaussian smoothing factor uses both core widths") {
  Eigen::VectorXd pos(4);
  pos << 1.0, 0.0, 0.0, 0.0;
  const std::vector<double> masses = {1.0, 3.0};
  const std::vector<double> lambdas = {0.6, 0.8};
  const Eigen::VectorXd v = gaussian_core_rhs(pos, masses, lambdas);

  const double factor = 1.0 - std::exp(-1.0 / (0.36 + 0.64));
  const double pre = 3.0 * factor / (2.0 * std::numbers::pi);
  // d = x0 - x1 = (1, 0): velocity is pre * (-d2, d1) = (0, pre)
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(pre).epsilon(1e-14));
}

TEST_CASE("the pair-rotation frequency has its closed-form values") {
  // M/(4 pi r^2) (1 - e^{-2 r^2 / lambda^2}) at M = 1, r = 1, lambda = 2
  const double expected = (1.0 - std::exp(-0.5)) / (4.0 * std::numbers::pi);
  CHECK(rotation_frequency_pair(1.0, 1.0, 2.0) ==
        doctest::Approx(expected).epsilon(1e-15));
  CHECK(rotation_frequency_pair(1.0, 1.0, 2.0) ==
        doctest::Approx(0.0313112924).epsilon(1e-8));

  // the point-vortex limit: lambda -> 0 gives M/(4 pi r^2)
  CHECK(rotation_frequency_pair(1.0, 1.0, 1e-8) ==
        doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-15));

  // a very wide core barely rotates
  CHECK(rotation_frequency_pair(1.0, 1.0, 100.0) < 1e-4);
}

TEST_CASE("the legacy frequency starts at its series limit and is continuous") {
  const double mass = 1.0, r = 1.0, lambda0 = 0.1;
  // t -> 0: (M/8 pi)(2/r^2 - lambda0^2/r^4)
  const double at0 = mass / (8.0 * std::numbers::pi) * (2.0 - 0.01);
  CHECK(rotation_frequency_pair_legacy(mass, r, lambda0, 0.01, 0.0) ==
        doctest::Approx(at0).epsilon(1e-15));

  // continuity across the series/log switch at nu t / r^2 = 1e-8
  const double nu = 0.01;
  const double t_switch = 1e-8 * r * r / nu;
  const double below = rotation_frequency_pair_legacy(mass, r, lambda0, nu,
                                                      t_switch * (1.0 - 1e-6));
  const double above = rotation_frequency_pair_legacy(mass, r, lambda0, nu,
                                                      t_switch * (1.0 + 1e-6));
  CHECK(std::abs(below - above) < 1e-10 * std::abs(at0));

  // it decays as the cores spread
  CHECK(rotation_frequency_pair_legacy(mass, r, lambda0, nu, 100.0) <
        rotation_frequency_pair_legacy(mass, r, lambda0, nu, 1.0));
}

TEST_CASE("the reference stepper is fourth order on a rotation") {
  // y'' = -y as a first-order system: exact solution rotates at unit rate
  const auto f = [](double, const Eigen::Vector2d& y) {
    return Eigen::Vector2d{y[1], -y[0]};
  };
  const Eigen::Vector2d y0{1.0, 0.0};

  const auto one_step_error = [&](double h) {
    const Eigen::Vector2d y1 = rk4_step(f, 0.0, y0, h);
    const Eigen::Vector2d exact{std::cos(h), -std::sin(h)};
    return (y1 - exact).norm();
  };
  const double e1 = one_step_error(0.1);
  const double e2 = one_step_error(0.05);
  CHECK(e1 / e2 > 25.0);  // local error h^5 halves to 1/32
  CHECK(e1 / e2 < 40.0);
}
