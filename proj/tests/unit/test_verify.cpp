// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "wolffsys/error.hpp"
#include "wolffsys/grid_function.hpp"
#include "wolffsys/measure.hpp"
#include "wolffsys/params.hpp"
#include "wolffsys/verify.hpp"
#include "wolffsys/wolff.hpp"

using namespace wolffsys;

namespace {
const HessianParams kHp = HessianParams::make(5, 2);
const WolffParams kWp = kHp.wolff();
const SystemParams kSp = SystemParams::make(kHp, 1.0, 0.5);

std::vector<double> grid() { return geometric_grid(1e-2, 1e2, 30); }
}  // namespace

TEST_CASE("est1: exact powers give c = 1 and scaling is visible on the lower branch") {
  const auto r = grid();
  const GridFunction w = wolff_curve(Measure::bump(5, 1.0, 1.0), kWp, r);
  const GridFunction u = w.pow(kSp.gamma1());
  const GridFunction v = w.pow(kSp.gamma2());
  const EstimateReport e = check_est1(u, v, w, kSp);
  CHECK(e.pass);
  CHECK(e.constant("c") == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.constant("c_lower") == doctest::Approx(1.0).epsilon(1e-14));

  const EstimateReport s = check_est1(u.scaled(0.1), v, w, kSp);
  CHECK(s.constant("c_lower") == doctest::Approx(10.0).epsilon(1e-13));

  // Relabeling (q1, u) <-> (q2, v) leaves c unchanged.
  const EstimateReport sw = check_est1(v, u, w, kSp.swapped());
  CHECK(sw.constant("c") == e.constant("c"));
}

TEST_CASE("est1: a vanishing unknown is infeasible") {
  const auto r = grid();
  const GridFunction w = wolff_curve(Measure::bump(5, 1.0, 1.0), kWp, r);
  const GridFunction zero(r, std::vector<double>(r.size(), 0.0));
  CHECK_THROWS_AS(check_est1(zero, w, w, kSp), Infeasible);
  const EstimateReport e = check_est1(zero, w, w, kSp, true);
  CHECK_FALSE(e.pass);
  CHECK(e.exploratory);
}

TEST_CASE("est3 adds the data potentials to the upper bound") {
  const auto r = grid();
  const GridFunction w = wolff_curve(Measure::bump(5, 1.0, 1.0), kWp, r);
  const GridFunction wm = wolff_curve(Measure::uniform_ball(5, 1.0, 1.0), kWp, r);
  std::vector<double> big(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) big[i] = wm.value(i) + w.value(i) + std::pow(w.value(i), kSp.gamma1());
  std::vector<double> small(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) small[i] = w.value(i) + std::pow(w.value(i), kSp.gamma2());
  const GridFunction u(r, big);
  const GridFunction v(r, small);
  const EstimateReport e = check_est3(u, v, w, wm, GridFunction(r, std::vector<double>(r.size(), 0.0)), kSp);
  CHECK(e.constant("c_upper") == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("est2: bump is feasible and sigma = 0 is vacuous") {
  const auto r = grid();
  const EstimateReport e = check_est2(Measure::bump(5, 1.0, 1.0), kSp, r);
  CHECK(e.pass);
  CHECK(std::isfinite(e.constant("lambda")));
  const EstimateReport z = check_est2(Measure::zero(5), kSp, r);
  CHECK(z.pass);
  CHECK(z.constant("lambda") == 1.0);
}

TEST_CASE("lemma B: positive kappa, scale covariance, dirac has no finite node") {
  const auto r = grid();
  const Measure om = Measure::bump(5, 1.0, 1.0);
  const EstimateReport e = lemma_b_kappa(om, 1.0, kWp, r);
  CHECK(e.pass);
  CHECK(e.constant("kappa") > 0.0);

  // omega -> c omega: left side scales by c^{(r/(p-1) + 1)/(p-1)}, and so does
  // the right side, so kappa is invariant.
  const EstimateReport s = lemma_b_kappa(Measure::scaled(3.0, om), 1.0, kWp, r);
  CHECK(s.constant("kappa") == doctest::Approx(e.constant("kappa")).epsilon(1e-6));

  // Tiny exponent: kappa^{r/(p-1)} -> 1 whatever kappa is, so the inequality
  // degenerates to W omega >= W omega.
  const EstimateReport t = lemma_b_kappa(om, 1e-6, kWp, r);
  const double e_tiny = 1e-6 / 2.0;
  CHECK(std::pow(t.constant("kappa"), e_tiny) == doctest::Approx(1.0).epsilon(1e-3));

  const EstimateReport d = lemma_b_kappa(Measure::dirac(Point(5, 0.0)), 1.0, kWp, r);
  CHECK(d.constant("kappa") == 0.0);
  CHECK_FALSE(d.pass);
  CHECK_THROWS_AS(lemma_b_kappa(om, 0.0, kWp, r), DomainError);
}

TEST_CASE("lemma C: adding a measure never lowers the left side") {
  const EstimateReport e =
      lemma_c_check(Measure::bump(5, 1.0, 1.0), Measure::uniform_ball(5, 1.0, 1.0), 1.0, kWp, grid());
  CHECK(e.pass);
  CHECK(e.constant("violations") == 0.0);
  for (double m : e.margins) CHECK(m >= 0.0);
}

TEST_CASE("lemma D: zero measure, bounded ratio and homogeneity") {
  const auto r = grid();
  const std::vector<double> R = geometric_grid(1e-2, 1.0, 11);
  const Point x(5, 0.0);
  CHECK(lemma_d_const(Measure::zero(5), 1.0, kWp, x, R, r).constant("c") == 0.0);
  const Measure sigma = Measure::bump(5, 1.0, 1.0);
  const double c1 = lemma_d_const(sigma, 1.0, kWp, x, R, r).constant("c");
  CHECK(std::isfinite(c1));
  CHECK(c1 > 0.0);
  // sigma -> c sigma multiplies W sigma by c^{1/(p-1)}, so the ratio by c^{s/(p-1)}.
  for (double c : {0.5, 2.0}) {
    const double cc = lemma_d_const(Measure::scaled(c, sigma), 1.0, kWp, x, R, r).constant("c");
    CHECK(cc == doctest::Approx(std::pow(c, 0.5) * c1).epsilon(1e-6));
  }
}

TEST_CASE("capacity proxy") {
  const EstimateReport d = capacity_proxy_check(Measure::dirac(Point(5, 0.0)), kWp);
  CHECK(std::isinf(d.constant("C_sigma")));
  CHECK_FALSE(d.pass);

  // sigma(B_r)/r = (omega/5) min(r,1)^5 / r rises on the family [1e-2, 1]; max at r = 1.
  const EstimateReport u = capacity_proxy_check(Measure::uniform_ball(5, 1.0, 1.0), kWp);
  CHECK(u.constant("C_sigma") == doctest::Approx(oracle::surface_area(5) / 5.0).epsilon(1e-12));
  CHECK(u.worst_radius == doctest::Approx(1.0));

  const EstimateReport c = capacity_proxy_check(preset_counterexample(5, 0.5, 1.5), kWp);
  CHECK(std::isfinite(c.constant("C_sigma")));
}

TEST_CASE("estimate reports roundtrip losslessly") {
  EstimateReport r;
  r.id = "est2";
  r.radii = {1e-3, 0.1, 7.25};
  r.margins = {std::numeric_limits<double>::infinity(), 1.0 / 3.0, 0.0};
  r.set_constant("lambda", 2.0 / 3.0);
  r.set_constant("infinite_nodes", 1.0);
  r.pass = false;
  r.exploratory = true;
  r.worst_node = 0;
  r.worst_radius = 1e-3;
  r.note = "multi\nline \\ note";
  const EstimateReport back = parse_estimate_report(serialize(r));
  CHECK(serialize(back) == serialize(r));
  CHECK(back.margins[1] == r.margins[1]);
  CHECK(back.constant("lambda") == r.constant("lambda"));
  CHECK(back.note == r.note);

  const EstimateReport real = lemma_b_kappa(Measure::bump(5, 1.0, 1.0), 1.0, kWp, grid());
  CHECK(serialize(parse_estimate_report(serialize(real))) == serialize(real));
}
