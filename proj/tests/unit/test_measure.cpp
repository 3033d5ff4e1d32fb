// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wolffsys/error.hpp"
#include "wolffsys/grid_function.hpp"
#include "wolffsys/measure.hpp"
#include "wolffsys/params.hpp"
#include "wolffsys/wolff.hpp"

using namespace wolffsys;

namespace {
double bump_density(double r) {
  const double s = 1.0 - r * r;
  return r < 1.0 ? s * s : 0.0;
}
}  // namespace

TEST_CASE("surface area constants") {
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-15));
  CHECK(sphere_area(5) == doctest::Approx(8.0 * M_PI * M_PI / 3.0).epsilon(1e-15));
  CHECK(ball_volume(3, 2.0) == doctest::Approx(4.0 / 3.0 * M_PI * 8.0).epsilon(1e-15));
}

TEST_CASE("dirac ball masses use closed balls") {
  const Measure d = Measure::dirac({0, 0, 0, 0, 0});
  const Point x = on_ray(5, 1.0);
  CHECK(d.ball_mass(x, 0.5) == 0.0);
  CHECK(d.ball_mass(x, 1.5) == 1.0);
  CHECK(d.ball_mass(x, 1.0) == 1.0);
  CHECK(d.ball_mass(Point(5, 0.0), 0.0) == 1.0);
  CHECK(d.ball_mass(x, 0.0) == 0.0);
}

TEST_CASE("uniform ball: full containment gives omega/n") {
  for (int n : {3, 5, 7}) {
    const Measure m = Measure::uniform_ball(n, 1.0, 1.0);
    CHECK(m.ball_mass(Point(n, 0.0), 1.0) == doctest::Approx(sphere_area(n) / n).epsilon(1e-12));
    CHECK(m.ball_mass(Point(n, 0.0), 3.0) == doctest::Approx(sphere_area(n) / n).epsilon(1e-12));
    CHECK(m.total_mass() == doctest::Approx(sphere_area(n) / n).epsilon(1e-12));
  }
}

TEST_CASE("capfrac limits and n = 3 closed form") {
  CHECK(capfrac(5, 1.0, 0.5, 1.6) == 1.0);
  CHECK(capfrac(5, 1.0, 0.5, 0.4) == 0.0);
  CHECK(capfrac(5, 0.0, 0.5, 0.6) == 1.0);
  CHECK(capfrac(5, 0.0, 0.5, 0.4) == 0.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double rho = u(rng), r = u(rng), t = u(rng);
    const double c = std::clamp((rho * rho + r * r - t * t) / (2 * rho * r), -1.0, 1.0);
    CHECK(capfrac(3, rho, r, t) == doctest::Approx((1.0 - c) / 2.0).epsilon(1e-12));
  }
  const auto mc = oracle::mc_capfrac(3, 1.0, 0.8, 0.7, 400000, 11);
  CHECK(std::fabs(capfrac(3, 1.0, 0.8, 0.7) - mc.mean) <= 3.0 * mc.stderr_);
}

TEST_CASE("capfrac agrees with Monte Carlo in higher dimensions and is monotone in t") {
  for (int n : {4, 5, 6}) {
    const auto mc = oracle::mc_capfrac(n, 0.7, 0.5, 0.4, 400000, 100 + n);
    CHECK(std::fabs(capfrac(n, 0.7, 0.5, 0.4) - mc.mean) <= 3.0 * mc.stderr_ + 1e-12);
    double last = 0.0;
    for (double t = 0.0; t <= 1.3; t += 0.01) {
      const double f = capfrac(n, 0.7, 0.5, t);
      CHECK(f >= last - 1e-15);
      CHECK(f <= 1.0);
      last = f;
    }
  }
}

TEST_CASE("capfrac integrates to the ball volume") {
  // int_0^inf omega r^{n-1} capfrac(n, rho, r, t) dr = |B_t|.
  const int n = 5;
  const double rho = 0.9, t = 0.6;
  const double v = oracle::simpson([&](double r) { return sphere_area(n) * std::pow(r, n - 1) * capfrac(n, rho, r, t); },
                                   rho - t, rho + t, 4000);
  CHECK(v == doctest::Approx(ball_volume(n, t)).epsilon(1e-6));
}

TEST_CASE("bump ball mass matches a Monte-Carlo oracle") {
  const int n = 5;
  const Measure m = Measure::bump(n, 1.0, 1.0);
  const Point x = on_ray(n, 0.7);
  const double got = m.ball_mass(x, 0.4);
  const auto mc = oracle::mc_ball_mass(n, bump_density, 1.0, x, 0.4, 2000000, 2026);
  INFO("mc=" << mc.mean << " se=" << mc.stderr_ << " got=" << got);
  CHECK(std::fabs(got - mc.mean) <= 3.0 * mc.stderr_);
}

TEST_CASE("ball mass is monotone in t and exactly additive and homogeneous") {
  const int n = 5;
  const Measure a = Measure::bump(n, 1.0, 2.0);
  const Measure b = Measure::uniform_ball(n, 0.5, 3.0);
  const Measure s = Measure::sum({a, b});
  const Measure c = Measure::scaled(2.5, a);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int i = 0; i < 40; ++i) {
    const Point x = on_ray(n, u(rng));
    const double t1 = u(rng), t2 = t1 + u(rng);
    CHECK(a.ball_mass(x, t1) <= a.ball_mass(x, t2));
    CHECK(s.ball_mass(x, t1) == a.ball_mass(x, t1) + b.ball_mass(x, t1));
    CHECK(c.ball_mass(x, t1) == 2.5 * a.ball_mass(x, t1));
  }
}

TEST_CASE("counterexample preset") {
  const Measure m = preset_counterexample(5, 0.5, 1.5);
  // s = (1 - q) n + 2q = 3.5
  const double r = 0.1;
  CHECK(m.density_at(r) == doctest::Approx(std::pow(r, -3.5) * std::pow(std::log(1.0 / r), -1.5)).epsilon(1e-12));
  CHECK(m.density_at(0.5) == 0.0);
  CHECK(m.density_at(0.9) == 0.0);
  CHECK(std::isfinite(m.total_mass()));
  CHECK_THROWS_AS(preset_counterexample(5, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(preset_counterexample(5, 1.5, 2.0), DomainError);
  // Cumulative mass near the origin: int_0^R omega r^{n-1-s} log(1/r)^{-beta} dr.
  const double R = 0.05;
  const double want = oracle::simpson(
      [](double lr) {
        const double rr = std::exp(lr);
        return sphere_area(5) * std::pow(rr, 5.0 - 3.5) * std::pow(-lr, -1.5);
      },
      std::log(1e-12), std::log(R), 20000);
  CHECK(m.ball_mass(Point(5, 0.0), R) == doctest::Approx(want).epsilon(1e-5));
}

TEST_CASE("weighted measures") {
  const int n = 5;
  const Measure sigma = Measure::bump(n, 1.0, 1.0);
  const std::vector<double> grid = geometric_grid(1e-3, 1e3, 121);
  const GridFunction one(grid, std::vector<double>(grid.size(), 3.0));
  const Point x = on_ray(n, 0.4);
  CHECK(weighted_measure(sigma, one, 0.0).ball_mass(x, 0.5) == sigma.ball_mass(x, 0.5));
  CHECK(weighted_measure(sigma, one, 2.0).ball_mass(x, 0.5) == doctest::Approx(9.0 * sigma.ball_mass(x, 0.5)).epsilon(1e-12));

  // Weight by W sigma itself; oracle: Simpson on the centred ball using the
  // same interpolated weight.
  const WolffParams wp = HessianParams::make(n, 2).wolff();
  const GridFunction w = wolff_curve(sigma, wp, grid);
  const Measure ws = weighted_measure(sigma, w, 1.0);
  for (double t : {0.1, 0.5, 0.9, 2.0}) {
    const double hi = std::min(t, 1.0);
    const double want = oracle::simpson(
        [&](double lr) {
          const double r = std::exp(lr);
          return sphere_area(n) * std::pow(r, n) * bump_density(r) * w(r);
        },
        std::log(1e-9), std::log(hi), 40000);
    CHECK(ws.ball_mass(Point(n, 0.0), t) == doctest::Approx(want).epsilon(1e-6));
  }
}
