// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include "wolffsys/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "wolffsys/error.hpp"
#include "wolffsys/verify.hpp"

namespace wolffsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack for comparisons between independently integrated curves.
constexpr double kCompareSlack = 1e-9;

GridFunction zeros(std::span<const double> radii) {
  return GridFunction(std::vector<double>(radii.begin(), radii.end()), std::vector<double>(radii.size(), 0.0));
}

GridFunction curve_or_zero(const Measure& m, const WolffParams& wp, std::span<const double> radii,
                           const QuadOpts& opts) {
  if (!(m.total_mass() > 0.0)) return zeros(radii);
  return wolff_curve(m, wp, radii, opts);
}

bool below(double a, double b) { return a <= b * (1.0 + kCompareSlack) || std::isinf(b); }

bool dominated(const GridFunction& f, const GridFunction& bound) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::isfinite(f.value(i)) && !below(f.value(i), bound.value(i))) return false;
  return true;
}

double relative_change(const GridFunction& next, const GridFunction& prev) {
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    const double a = next.value(i);
    const double b = prev.value(i);
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    diff = std::max(diff, std::abs(a - b));
    scale = std::max(scale, std::abs(b));
  }
  if (scale == 0.0) return diff == 0.0 ? 0.0 : kInf;
  return diff / scale;
}

// W(w^q d sigma + d extra) on the grid.
class Operator {
 public:
  Operator(const Measure& sigma, const Measure& extra, double q, const WolffParams& wp,
           std::span<const double> radii, const QuadOpts& opts)
      : sigma_(sigma), extra_(extra), q_(q), wp_(wp), radii_(radii), opts_(opts),
        has_extra_(extra.total_mass() > 0.0) {}

  GridFunction operator()(const GridFunction& w) const {
    Measure m = weighted_measure(sigma_, w, q_);
    if (has_extra_) m = Measure::sum({m, extra_});
    return wolff_curve(m, wp_, radii_, opts_);
  }

 private:
  const Measure& sigma_;
  const Measure& extra_;
  double q_;
  WolffParams wp_;
  std::span<const double> radii_;
  QuadOpts opts_;
  bool has_extra_;
};

}  // namespace

const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iter: return "max_iter";
    case Termination::diverged: return "diverged";
  }
  return "unknown";
}

double calibrate_lambda_sub(const Measure& sigma, const GridFunction& w_sigma, const SystemParams& sp,
                            const QuadOpts& opts, int max_halvings) {
  if (!(sigma.total_mass() > 0.0)) return 1.0;
  const WolffParams& wp = sp.base();
  const double e = wp.inner_power();
  const double g1 = sp.gamma1();
  const double g2 = sp.gamma2();
  const GridFunction a1 = wolff_curve(weighted_measure(sigma, w_sigma, sp.q1() * g2), wp, w_sigma.radii(), opts);
  const GridFunction a2 = wolff_curve(weighted_measure(sigma, w_sigma, sp.q2() * g1), wp, w_sigma.radii(), opts);

  // lambda (W)^{g1} <= lambda^{q1 e} a1  <=>  lambda^{1 - q1 e} (W)^{g1} <= a1.
  const double s1 = 1.0 - sp.q1() * e;
  const double s2 = 1.0 - sp.q2() * e;
  double lambda = 1.0;
  for (int j = 0; j <= max_halvings; ++j, lambda *= 0.5) {
    bool ok = true;
    for (std::size_t i = 0; i < w_sigma.size() && ok; ++i) {
      const double w = w_sigma.value(i);
      if (!std::isfinite(w)) continue;
      ok = below(std::pow(lambda, s1) * std::pow(w, g1), a1.value(i)) &&
           below(std::pow(lambda, s2) * std::pow(w, g2), a2.value(i));
    }
    if (ok) return lambda;
  }
  throw CalibrationFailure("sub-solution calibration failed down to lambda = 2^-" + std::to_string(max_halvings));
}

double calibrate_lambda_sub(const Measure& sigma, const SystemParams& sp, std::span<const double> radii,
                            const QuadOpts& opts, int max_halvings) {
  if (!(sigma.total_mass() > 0.0)) return 1.0;
  return calibrate_lambda_sub(sigma, wolff_curve(sigma, sp.base(), radii, opts), sp, opts, max_halvings);
}

Envelope supersolution_envelope(const GridFunction& w_sigma, const GridFunction& w_mu, const GridFunction& w_nu,
                                const SystemParams& sp, double lambda) {
  if (w_mu.size() != w_sigma.size() || w_nu.size() != w_sigma.size())
    throw DomainError("envelope: curves must share one grid");
  std::vector<double> u(w_sigma.size());
  std::vector<double> v(w_sigma.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w = w_sigma.value(i);
    const double base = w_mu.value(i) + w_nu.value(i) + w;
    u[i] = lambda * (base + std::pow(w, sp.gamma1()));
    v[i] = lambda * (base + std::pow(w, sp.gamma2()));
  }
  std::vector<double> r(w_sigma.radii().begin(), w_sigma.radii().end());
  return {GridFunction(r, std::move(u), w_sigma.tail_cap()), GridFunction(r, std::move(v), w_sigma.tail_cap())};
}

Envelope supersolution_envelope(const Measure& sigma, const Measure& mu, const Measure& nu, const SystemParams& sp,
                                double lambda, std::span<const double> radii, const QuadOpts& opts) {
  const WolffParams& wp = sp.base();
  return supersolution_envelope(curve_or_zero(sigma, wp, radii, opts), curve_or_zero(mu, wp, radii, opts),
                                curve_or_zero(nu, wp, radii, opts), sp, lambda);
}

SystemSolution solve_system(const Measure& sigma, const Measure& mu, const Measure& nu, const SystemParams& sp,
                            std::span<const double> radii, const SolverOptions& opts) {
  const WolffParams& wp = sp.base();
  const int n = wp.n();
  for (const Measure* m : {&sigma, &mu, &nu}) {
    if (m->dimension() != n) throw DomainError("solve: measure dimension differs from the system");
    if (!m->is_radial()) throw DomainError("solve: measures must be radial (atoms only at the origin)");
  }
  if (!(opts.tol > 0.0) || opts.max_iter < 1 || !(opts.divergence_factor > 1.0))
    throw DomainError("solve: need tol > 0, max_iter >= 1 and divergence_factor > 1");

  SystemSolution sol;
  SolveReport& rep = sol.report;
  rep.capacity_override = opts.override_capacity_check;
  rep.c_sigma = capacity_proxy_check(sigma, wp).constant("C_sigma");
  if (!std::isfinite(rep.c_sigma) && !opts.override_capacity_check)
    throw DomainError("solve: sigma fails the capacity ball proxy (point masses give C_sigma = inf); "
                      "rerun with the capacity override to force the iteration");

  sol.w_sigma = curve_or_zero(sigma, wp, radii, opts.quad);
  sol.w_mu = curve_or_zero(mu, wp, radii, opts.quad);
  sol.w_nu = curve_or_zero(nu, wp, radii, opts.quad);

  if (!(sigma.total_mass() > 0.0)) {
    // No coupling: one application of the operator is the fixed point.
    sol.u = sol.w_mu;
    sol.v = sol.w_nu;
    sol.u0 = zeros(radii);
    sol.v0 = zeros(radii);
    sol.envelope = supersolution_envelope(sol.w_sigma, sol.w_mu, sol.w_nu, sp, 1.0);
    rep.iterations = 1;
    rep.residual_u.push_back(0.0);
    rep.residual_v.push_back(0.0);
    rep.lambda_sub = 1.0;
    rep.lambda_super = 1.0;
    rep.c_lower = 0.0;
    rep.c_upper = 1.0;
    rep.termination = Termination::converged;
    rep.note = "sigma = 0; the system decouples";
    return sol;
  }

  rep.lambda_sub = calibrate_lambda_sub(sigma, sol.w_sigma, sp, opts.quad, opts.max_halvings);
  sol.u0 = sol.w_sigma.pow(sp.gamma1()).scaled(rep.lambda_sub);
  sol.v0 = sol.w_sigma.pow(sp.gamma2()).scaled(rep.lambda_sub);

  const Operator next_u(sigma, mu, sp.q1(), wp, radii, opts.quad);
  const Operator next_v(sigma, nu, sp.q2(), wp, radii, opts.quad);
  GridFunction u = next_u(sol.v0);
  GridFunction v = next_v(sol.u0);

  // lambda_super: the envelope must dominate the first iterates and map
  // into itself.
  double lambda = 1.0;
  int doublings = 0;
  auto grow = [&] {
    if (++doublings > opts.max_doublings)
      throw CalibrationFailure("supersolution envelope not found up to lambda = 2^" +
                               std::to_string(opts.max_doublings));
    lambda *= 2.0;
  };
  Envelope env = supersolution_envelope(sol.w_sigma, sol.w_mu, sol.w_nu, sp, lambda);
  for (;;) {
    if (dominated(sol.u0, env.u) && dominated(sol.v0, env.v) && dominated(u, env.u) && dominated(v, env.v)) {
      if (dominated(next_u(env.v), env.u) && dominated(next_v(env.u), env.v)) break;
    }
    grow();
    env = supersolution_envelope(sol.w_sigma, sol.w_mu, sol.w_nu, sp, lambda);
  }
  rep.lambda_super = lambda;
  sol.envelope = env;

  GridFunction u_prev = sol.u0;
  GridFunction v_prev = sol.v0;
  rep.termination = Termination::max_iter;
  for (int it = 1;; ++it) {
    rep.iterations = it;
    rep.residual_u.push_back(relative_change(u, u_prev));
    rep.residual_v.push_back(relative_change(v, v_prev));

    for (const auto& [next, prev] : {std::pair{&u, &u_prev}, std::pair{&v, &v_prev}}) {
      for (std::size_t i = 0; i < next->size(); ++i) {
        const double drop = prev->value(i) - next->value(i);
        if (!std::isfinite(drop)) continue;
        rep.worst_monotonicity = std::max(rep.worst_monotonicity, drop);
        if (drop > opts.monotone_tol) ++rep.monotonicity_violations;
      }
    }

    bool blown = false;
    for (std::size_t i = 0; i < u.size() && !blown; ++i) {
      blown = (std::isfinite(env.u.value(i)) && u.value(i) > opts.divergence_factor * env.u.value(i)) ||
              (std::isfinite(env.v.value(i)) && v.value(i) > opts.divergence_factor * env.v.value(i));
    }
    if (blown) {
      rep.termination = Termination::diverged;
      char buf[128];
      std::snprintf(buf, sizeof buf, "iterate %d exceeded %.3g times the supersolution envelope", it,
                    opts.divergence_factor);
      rep.note = buf;
      break;
    }
    if (rep.residual_u.back() <= opts.tol && rep.residual_v.back() <= opts.tol) {
      rep.termination = Termination::converged;
      break;
    }
    if (it >= opts.max_iter) {
      rep.note = "iteration budget exhausted";
      break;
    }
    GridFunction u_next = next_u(v);
    GridFunction v_next = next_v(u);
    u_prev = std::move(u);
    v_prev = std::move(v);
    u = std::move(u_next);
    v = std::move(v_next);
  }

  const bool inhomogeneous = mu.total_mass() > 0.0 || nu.total_mass() > 0.0;
  const EstimateReport est = inhomogeneous
                                 ? check_est3(u, v, sol.w_sigma, sol.w_mu, sol.w_nu, sp, true)
                                 : check_est1(u, v, sol.w_sigma, sp, true);
  rep.c_lower = est.constant("c_lower");
  rep.c_upper = est.constant("c_upper");
  sol.u = std::move(u);
  sol.v = std::move(v);
  return sol;
}

void require_converged(const SolveReport& report) {
  switch (report.termination) {
    case Termination::converged: return;
    case Termination::diverged: throw Error(ErrorKind::diverged, "solve diverged: " + report.note);
    case Termination::max_iter: throw Error(ErrorKind::max_iter, "solve did not converge: " + report.note);
  }
}

std::vector<double> default_solver_grid() { return geometric_grid(1e-3, 1e3, 200); }

}  // namespace wolffsys
