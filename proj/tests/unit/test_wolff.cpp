// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wolffsys/grid_function.hpp"
#include "wolffsys/measure.hpp"
#include "wolffsys/params.hpp"
#include "wolffsys/wolff.hpp"

using namespace wolffsys;

namespace {
const WolffParams kW52 = HessianParams::make(5, 2).wolff();

// ((p-1)/d) M^{1/(p-1)} |x|^{-d} with d = (n - alpha p)/(p - 1).
double dirac_closed_form(const WolffParams& wp, double mass, double r) {
  const double d = wp.tail_exponent();
  return (wp.p() - 1.0) / (wp.riesz_exponent()) * std::pow(mass, wp.inner_power()) * std::pow(r, -d);
}
}  // namespace

TEST_CASE("dirac potential: closed form on both paths") {
  const Measure d = Measure::dirac(Point(5, 0.0));
  for (double r : {0.01, 0.3, 1.0, 7.0, 100.0}) {
    const Point x = on_ray(5, r);
    const double want = 2.0 / std::sqrt(r);
    CHECK(dirac_closed_form(kW52, 1.0, r) == doctest::Approx(want).epsilon(1e-15));
    CHECK(wolff_potential(d, kW52, x) == doctest::Approx(want).epsilon(1e-14));
    CHECK(wolff_potential_quadrature(d, kW52, x) == doctest::Approx(want).epsilon(1e-8));
  }
  CHECK(std::isinf(wolff_potential(d, kW52, Point(5, 0.0))));
}

TEST_CASE("homogeneity W(c mu) = c^{1/(p-1)} W(mu)") {
  const Measure atoms = Measure::atomic(5, {{on_ray(5, 0.3), 1.0}, {on_ray(5, -0.8), 2.0}});
  const Measure bump = Measure::bump(5, 1.0, 1.0);
  const Point x = on_ray(5, 0.55);
  for (double c : {0.25, 3.0}) {
    const double f = std::pow(c, kW52.inner_power());
    CHECK(wolff_potential(Measure::scaled(c, atoms), kW52, x) ==
          doctest::Approx(f * wolff_potential(atoms, kW52, x)).epsilon(1e-12));
    CHECK(wolff_potential(Measure::scaled(c, bump), kW52, x) ==
          doctest::Approx(f * wolff_potential(bump, kW52, x)).epsilon(1e-8));
  }
}

TEST_CASE("far field of a uniform ball approaches the Dirac law") {
  const Measure m = Measure::uniform_ball(5, 1.0, 1.0);
  const double r = 100.0;
  const double want = dirac_closed_form(kW52, m.total_mass(), r);
  CHECK(wolff_potential(m, kW52, on_ray(5, r)) == doctest::Approx(want).epsilon(0.01));
}

TEST_CASE("curves: dirac grid values and the zero measure") {
  const std::vector<double> grid = {1.0, 2.0, 4.0};
  const GridFunction c = wolff_curve(Measure::dirac(Point(5, 0.0)), kW52, grid);
  CHECK(c.value(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c.value(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(c.value(2) == doctest::Approx(1.0).epsilon(1e-14));
  const GridFunction z = wolff_curve(Measure::zero(5), kW52, grid);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(z.value(i) == 0.0);
}

TEST_CASE("subadditivity for two diracs along the ray (p >= 2)") {
  const Measure a = Measure::dirac(on_ray(5, 1.0));
  const Measure b = Measure::dirac(on_ray(5, -1.0));
  const Measure ab = Measure::sum({a, b});
  for (double r : {0.1, 0.5, 0.9, 1.5, 3.0, 10.0}) {
    const Point x = on_ray(5, r);
    CHECK(wolff_potential(ab, kW52, x) <= wolff_potential(a, kW52, x) + wolff_potential(b, kW52, x) + 1e-14);
  }
}

TEST_CASE("atomic measures: monotonicity in the measure and translation invariance") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Atom> atoms;
    for (int i = 0; i < 4; ++i) {
      Point p(5);
      for (double& c : p) c = u(rng);
      atoms.push_back({p, 0.5 + std::fabs(u(rng))});
    }
    Point x(5), shift(5);
    for (double& c : x) c = 2.0 * u(rng);
    for (double& c : shift) c = 3.0 * u(rng);
    const Measure m = Measure::atomic(5, atoms);
    std::vector<Atom> bigger = atoms;
    bigger.push_back({Point(5, 0.1), 0.3});
    CHECK(wolff_potential(Measure::atomic(5, bigger), kW52, x) >= wolff_potential(m, kW52, x));

    std::vector<Atom> moved = atoms;
    for (auto& a : moved)
      for (int i = 0; i < 5; ++i) a.position[i] += shift[i];
    Point xs = x;
    for (int i = 0; i < 5; ++i) xs[i] += shift[i];
    CHECK(wolff_potential(Measure::atomic(5, moved), kW52, xs) ==
          doctest::Approx(wolff_potential(m, kW52, x)).epsilon(1e-12));
  }
}

TEST_CASE("tail slope of compactly supported measures") {
  const Measure m = Measure::bump(5, 1.0, 1.0);
  const std::vector<double> grid = geometric_grid(200.0, 1000.0, 5);
  const GridFunction c = wolff_curve(m, kW52, grid);
  const std::vector<double> v(c.values().begin(), c.values().end());
  CHECK(oracle::loglog_slope(grid, v) == doctest::Approx(-0.5).epsilon(2e-3));
}

TEST_CASE("finite potential off the support singular set") {
  const WolffParams wp = HessianParams::make(5, 2).wolff();
  const std::vector<double> grid = geometric_grid(1e-3, 10.0, 25);
  for (const Measure& m : {Measure::bump(5, 1.0, 1.0), Measure::uniform_ball(5, 1.0, 1.0),
                           preset_counterexample(5, 0.5, 1.5)}) {
    CHECK(wolff_curve(m, wp, grid).all_finite());
  }
}

TEST_CASE("grid function interpolation contract") {
  const std::vector<double> r = {1.0, 2.0, 4.0};
  const GridFunction f(r, {4.0, 1.0, 0.25});  // 4 r^{-2}
  CHECK(f(1.5) == doctest::Approx(4.0 / 2.25).epsilon(1e-14));
  CHECK(f(8.0) == doctest::Approx(4.0 / 64.0).epsilon(1e-14));
  CHECK(std::isinf(f(0.0)));
  CHECK(f(0.5) == doctest::Approx(16.0).epsilon(1e-14));
  const GridFunction capped(r, {4.0, 1.0, 0.25}, 0.5);
  CHECK(capped(8.0) == doctest::Approx(0.25 * std::pow(2.0, -0.5)).epsilon(1e-14));
  const GridFunction z(r, {1.0, 0.0, 0.0});
  CHECK(z(1.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f.pow(2.0).value(1) == 1.0);
  CHECK(f.scaled(3.0).value(2) == 0.75);
  CHECK(f.sup_norm() == 4.0);
}
