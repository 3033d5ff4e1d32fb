// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>

#include "wolffsys/wolffsys.h"

namespace {
wsys_problem hessian(int n, int k, double q1 = 0.0, double q2 = 0.0) { return {n, k, 0.0, 0.0, q1, q2}; }
}  // namespace

TEST_CASE("c api: problem validation and error reporting") {
  wsys_problem p = hessian(5, 2);
  REQUIRE(wsys_problem_check(&p) == WSYS_OK);
  CHECK(p.p == 3.0);
  CHECK(p.alpha == doctest::Approx(4.0 / 3.0));
  CHECK(std::string(wsys_last_error()).empty());

  wsys_problem bad = hessian(4, 2);
  CHECK(wsys_problem_check(&bad) == WSYS_DOMAIN);
  CHECK(std::string(wsys_last_error()).find("k < n/2") != std::string::npos);
  CHECK(std::string(wsys_status_string(WSYS_DOMAIN)) == "domain error");

  double g1 = 0, g2 = 0;
  CHECK(wsys_gammas(3.0, 1.0, 1.0, &g1, &g2) == WSYS_OK);
  CHECK(g1 == 2.0);
  CHECK(wsys_gammas(3.0, 2.0, 2.0, &g1, &g2) == WSYS_DOMAIN);
  CHECK(wsys_gammas(3.0, 1.0, 1.0, nullptr, &g2) == WSYS_INVALID_ARGUMENT);
}

TEST_CASE("c api: last error is per thread") {
  wsys_problem bad = hessian(4, 2);
  REQUIRE(wsys_problem_check(&bad) == WSYS_DOMAIN);
  std::string other = "unset";
  std::thread t([&] { other = wsys_last_error(); });
  t.join();
  CHECK(other.empty());
  CHECK_FALSE(std::string(wsys_last_error()).empty());
}

TEST_CASE("c api: measures and dirac potential") {
  const double origin[5] = {0, 0, 0, 0, 0};
  const double mass = 1.0;
  wsys_measure* d = nullptr;
  REQUIRE(wsys_measure_atomic(5, origin, &mass, 1, &d) == WSYS_OK);
  const double x[5] = {1, 0, 0, 0, 0};
  double bm = -1;
  CHECK(wsys_measure_ball_mass(d, x, 1.5, &bm) == WSYS_OK);
  CHECK(bm == 1.0);
  CHECK(wsys_measure_dimension(d) == 5);

  const wsys_problem p = hessian(5, 2);
  double w = 0;
  CHECK(wsys_wolff_potential(d, &p, x, nullptr, &w) == WSYS_OK);
  CHECK(w == doctest::Approx(2.0).epsilon(1e-14));

  const double radii[3] = {1, 2, 4};
  wsys_curve* c = nullptr;
  REQUIRE(wsys_wolff_curve(d, &p, radii, 3, nullptr, &c) == WSYS_OK);
  CHECK(wsys_curve_size(c) == 3);
  CHECK(wsys_curve_values(c)[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(wsys_curve_eval(c, 3.0) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
  wsys_curve_free(c);

  wsys_measure* s = nullptr;
  REQUIRE(wsys_measure_scaled(4.0, d, &s) == WSYS_OK);
  double total = 0;
  CHECK(wsys_measure_total_mass(s, &total) == WSYS_OK);
  CHECK(total == 4.0);
  const wsys_measure* parts[2] = {d, s};
  wsys_measure* sum = nullptr;
  REQUIRE(wsys_measure_sum(parts, 2, &sum) == WSYS_OK);
  CHECK(wsys_measure_total_mass(sum, &total) == WSYS_OK);
  CHECK(total == 5.0);

  wsys_measure* bad = nullptr;
  CHECK(wsys_measure_counterexample(5, 0.5, 1.0, &bad) == WSYS_DOMAIN);
  CHECK(bad == nullptr);
  wsys_measure_free(sum);
  wsys_measure_free(s);
  wsys_measure_free(d);
  wsys_measure_free(nullptr);
}

TEST_CASE("c api: dirichlet profile and lemma A") {
  wsys_measure* g = nullptr;
  REQUIRE(wsys_measure_uniform_ball(5, 1.0, 10.0, &g) == WSYS_OK);
  const wsys_problem p = hessian(5, 2);
  double radii[20];
  for (int i = 0; i < 20; ++i) radii[i] = 0.05 * (i + 1);
  wsys_profile* prof = nullptr;
  REQUIRE(wsys_dirichlet(g, &p, 1.0, radii, 20, &prof) == WSYS_OK);
  CHECK(wsys_profile_size(prof) == 20);
  for (size_t i = 0; i < 20; ++i) {
    const double r = wsys_profile_radii(prof)[i];
    CHECK(wsys_profile_u(prof)[i] == doctest::Approx((1 - r * r) / 2).epsilon(1e-9).scale(1e-12));
    double m = 0;
    CHECK(wsys_profile_hessian_mass(prof, &p, i, &m) == WSYS_OK);
    CHECK(m == doctest::Approx(wsys_profile_source_mass(prof)[i]).epsilon(1e-9));
  }
  double m = 0;
  CHECK(wsys_profile_hessian_mass(prof, &p, 99, &m) == WSYS_INVALID_ARGUMENT);
  wsys_estimate* e = nullptr;
  REQUIRE(wsys_lemma_a(prof, &p, 0.0, 0.0, nullptr, &e) == WSYS_OK);
  CHECK(std::string(wsys_estimate_id(e)) == "lemA");
  double k = 0;
  CHECK(wsys_estimate_constant(e, "K", &k) == WSYS_OK);
  CHECK(k >= 1.0);
  CHECK(wsys_estimate_constant(e, "nope", &k) == WSYS_INVALID_ARGUMENT);
  wsys_estimate_free(e);
  wsys_profile_free(prof);
  wsys_measure_free(g);
}

TEST_CASE("c api: solver refusal, decoupled solve and report text") {
  const double origin[5] = {0, 0, 0, 0, 0};
  const double mass = 1.0;
  wsys_measure* d = nullptr;
  REQUIRE(wsys_measure_atomic(5, origin, &mass, 1, &d) == WSYS_OK);
  const wsys_problem p = hessian(5, 2, 1.0, 1.0);
  double radii[10];
  for (int i = 0; i < 10; ++i) radii[i] = std::pow(10.0, -1.0 + 0.3 * i);
  wsys_solver_opts o = wsys_solver_opts_default();
  wsys_solution* s = nullptr;
  CHECK(wsys_solve(d, nullptr, nullptr, &p, radii, 10, &o, &s) == WSYS_DOMAIN);
  CHECK(s == nullptr);
  CHECK(std::string(wsys_last_error()).find("capacity") != std::string::npos);

  wsys_measure* zero = nullptr;
  wsys_measure* mu = nullptr;
  REQUIRE(wsys_measure_zero(5, &zero) == WSYS_OK);
  REQUIRE(wsys_measure_uniform_ball(5, 1.0, 1.0, &mu) == WSYS_OK);
  REQUIRE(wsys_solve(zero, mu, nullptr, &p, radii, 10, &o, &s) == WSYS_OK);
  const wsys_solve_summary sum = wsys_solution_summary(s);
  CHECK(sum.converged == 1);
  CHECK(sum.iterations == 1);
  const double* ru = nullptr;
  CHECK(wsys_solution_residuals(s, &ru, nullptr) == 1);
  CHECK(ru[0] == 0.0);
  CHECK(wsys_curve_values(wsys_solution_curve(s, WSYS_CURVE_V))[3] == 0.0);
  CHECK(wsys_curve_values(wsys_solution_curve(s, WSYS_CURVE_U))[3] > 0.0);
  CHECK(wsys_solution_curve(s, static_cast<wsys_curve_kind>(42)) == nullptr);
  char* text = nullptr;
  REQUIRE(wsys_solution_report_text(s, &text) == WSYS_OK);
  CHECK(std::strstr(text, "termination=converged") != nullptr);
  wsys_string_free(text);
  wsys_solution_free(s);
  wsys_measure_free(mu);
  wsys_measure_free(zero);
  wsys_measure_free(d);
}

TEST_CASE("c api: estimate text roundtrip and capacity proxy") {
  wsys_measure* u = nullptr;
  REQUIRE(wsys_measure_uniform_ball(5, 1.0, 1.0, &u) == WSYS_OK);
  const wsys_problem p = hessian(5, 2);
  wsys_estimate* e = nullptr;
  REQUIRE(wsys_capacity_proxy(u, &p, &e) == WSYS_OK);
  CHECK(wsys_estimate_pass(e) == 1);
  CHECK(wsys_estimate_size(e) == 41);
  char* text = nullptr;
  REQUIRE(wsys_estimate_to_text(e, &text) == WSYS_OK);
  wsys_estimate* back = nullptr;
  REQUIRE(wsys_estimate_from_text(text, &back) == WSYS_OK);
  char* again = nullptr;
  REQUIRE(wsys_estimate_to_text(back, &again) == WSYS_OK);
  CHECK(std::string(text) == std::string(again));
  CHECK(std::string(wsys_estimate_constant_name(back, 0)) == "C_sigma");
  CHECK(wsys_estimate_constant_value(back, 0) == wsys_estimate_constant_value(e, 0));
  wsys_string_free(text);
  wsys_string_free(again);
  wsys_estimate* junk = nullptr;
  CHECK(wsys_estimate_from_text("what=ever\n", &junk) == WSYS_DOMAIN);
  wsys_estimate_free(back);
  wsys_estimate_free(e);
  wsys_measure_free(u);
}
