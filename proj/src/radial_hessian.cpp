// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include "wolffsys/radial_hessian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "wolffsys/error.hpp"
#include "wolffsys/grid_function.hpp"
#include "wolffsys/quadrature.hpp"

namespace wolffsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSegmentRelTol = 1e-12;

// Relative slack for v' < 0 coming from roundoff.
constexpr double kNegativeSlack = 1e-12;

constexpr double kFlatIncrement = 1e-13;

double hessian_constant(const HessianParams& hp) {
  return sphere_area(hp.n()) * binomial(hp.n() - 1, hp.k() - 1);
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return std::round(c);
}

double fk_radial(int n, int k, double du, double ddu, double r) {
  if (!(r > 0.0)) throw DomainError("fk_radial: radius must be positive");
  if (k < 1 || k > n) throw DomainError("fk_radial: order must satisfy 1 <= k <= n");
  const double ratio = du / r;
  return binomial(n - 1, k) * std::pow(ratio, k) + binomial(n - 1, k - 1) * std::pow(ratio, k - 1) * ddu;
}

double hessian_measure_ball(const RadialProfile& profile, const HessianParams& hp, std::size_t i) {
  if (i >= profile.size()) throw DomainError("hessian_measure_ball: node index out of range");
  const double r = profile.radii[i];
  if (!(r > 0.0)) throw DomainError("hessian_measure_ball: radius must be positive");
  double vp = -profile.du[i];
  const double scale = std::max(std::abs(profile.du[i]), 1.0);
  if (vp < -kNegativeSlack * scale) throw DomainError("hessian_measure_ball: profile is not radially k-subharmonic");
  vp = std::max(vp, 0.0);
  const int n = hp.n();
  const int k = hp.k();
  return hessian_constant(hp) * std::pow(r, n - k) * std::pow(vp, k) / k;
}

double hessian_measure_ball(const RadialProfile& profile, const HessianParams& hp, double r) {
  if (!(r > 0.0)) throw DomainError("hessian_measure_ball: radius must be positive");
  std::vector<double> radii;
  std::vector<double> slope;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (!(profile.radii[i] > 0.0)) continue;
    const double vp = -profile.du[i];
    if (vp < -kNegativeSlack * std::max(std::abs(vp), 1.0))
      throw DomainError("hessian_measure_ball: profile is not radially k-subharmonic");
    radii.push_back(profile.radii[i]);
    slope.push_back(std::max(vp, 0.0));
  }
  if (radii.empty() || r < radii.front() || r > radii.back())
    throw DomainError("hessian_measure_ball: radius outside the profile grid");
  const GridFunction vprime(std::move(radii), std::move(slope));
  const int n = hp.n();
  const int k = hp.k();
  return hessian_constant(hp) * std::pow(r, n - k) * std::pow(vprime(r), k) / k;
}

RadialProfile solve_dirichlet_radial(const Measure& g, const HessianParams& hp, double R,
                                     std::span<const double> radii) {
  const int n = hp.n();
  const int k = hp.k();
  if (g.dimension() != n) throw DomainError("dirichlet: source and parameters differ in dimension");
  if (!g.is_radial()) throw DomainError("dirichlet: source measure must be radial");
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("dirichlet: boundary radius must be positive and finite");

  RadialProfile out;
  out.boundary_radius = R;
  for (double r : radii) {
    if (!(r >= 0.0)) throw DomainError("dirichlet: radii must be nonnegative");
    if (r < R) out.radii.push_back(r);
  }
  std::sort(out.radii.begin(), out.radii.end());
  out.radii.erase(std::unique(out.radii.begin(), out.radii.end()), out.radii.end());
  out.radii.push_back(R);

  const Point origin(static_cast<std::size_t>(n), 0.0);
  const double c = hessian_constant(hp);
  auto mass = [&](double s) {
    const double m = g.ball_mass(origin, s);
    if (m < 0.0) throw DomainError("dirichlet: source has negative mass");
    return m;
  };
  auto vprime_from = [&](double s, double m) { return std::pow(k * m / (c * std::pow(s, n - k)), 1.0 / k); };

  const std::size_t count = out.radii.size();
  out.u.assign(count, 0.0);
  out.du.assign(count, 0.0);
  out.source_mass.assign(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = out.radii[i];
    out.source_mass[i] = mass(r);
    if (r > 0.0) out.du[i] = -vprime_from(r, out.source_mass[i]);
  }

  std::vector<double> breaks = g.geometry(origin).breakpoints;
  auto integrand = [&](double ls) {
    const double s = std::exp(ls);
    return vprime_from(s, mass(s)) * s;
  };
  for (std::size_t i = count - 1; i-- > 0;) {
    const double a = out.radii[i];
    const double b = out.radii[i + 1];
    if (!(a > 0.0)) break;
    std::vector<double> pts{std::log(a)};
    for (double t : breaks)
      if (t > a && t < b) pts.push_back(std::log(t));
    pts.push_back(std::log(b));
    const auto res = quad::integrate15(integrand, pts, kSegmentRelTol, 1e-300);
    if (!res.converged) throw QuadratureFailure("dirichlet: segment integral did not converge");
    out.u[i] = out.u[i + 1] + res.value;
  }

  // Node at the origin: v'(s) ~ v'(r1) (s/r1)^beta on (0, r1].
  if (count >= 3 && out.radii[0] == 0.0) {
    const double r1 = out.radii[1];
    const double r2 = out.radii[2];
    const double v1 = -out.du[1];
    const double v2 = -out.du[2];
    if (v1 == 0.0) {
      out.u[0] = out.u[1];
    } else {
      const double beta = std::log(v2 / v1) / std::log(r2 / r1);
      out.u[0] = beta > -1.0 ? out.u[1] + v1 * r1 / (beta + 1.0) : kInf;
      out.du[0] = beta > 0.0 ? 0.0 : (beta == 0.0 ? -v1 : -kInf);
    }
  }
  return out;
}

Measure recover_hessian_measure(const RadialProfile& profile, const HessianParams& hp) {
  const int n = hp.n();
  std::vector<double> logr;
  std::vector<double> mass;
  double last = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double r = profile.radii[i];
    if (!(r > 0.0) || !std::isfinite(profile.du[i])) continue;
    last = std::max(last, hessian_measure_ball(profile, hp, i));
    logr.push_back(std::log(r));
    mass.push_back(last);
  }
  if (logr.size() < 4) throw DomainError("recover_hessian_measure: need at least four positive nodes");
  // Increments at roundoff level are flattened so the spline slope is
  // exactly zero where the source vanishes.
  for (std::size_t i = 1; i < mass.size(); ++i)
    if (mass[i] - mass[i - 1] <= kFlatIncrement * mass[i]) mass[i] = mass[i - 1];
  const Point origin(static_cast<std::size_t>(n), 0.0);
  if (!(mass.back() > 0.0)) return Measure::zero(n);

  const double r0 = std::exp(logr[0]);
  const double r1 = std::exp(logr[1]);
  const double r0n = std::pow(r0, n);
  const double r1n = std::pow(r1, n);
  // Atom at the origin: what is left of M(r0) after extending the first
  // cell's average density down to 0.
  const double atom = std::clamp(mass[0] - (mass[1] - mass[0]) * r0n / (r1n - r0n), 0.0, mass[0]);
  const double omega = sphere_area(n);
  const double core_density = (mass[0] - atom) / (omega * r0n / n);
  const double r_hi = std::exp(logr.back());

  std::vector<Measure> parts;
  if (atom > 0.0) parts.push_back(Measure::dirac(origin, atom));
  if (mass.back() - atom > 1e-14 * mass.back()) {
    // Between nodes M(r) is a power law (linear in r when a cell starts at
    // zero mass), so the density is smooth and free of cancellation inside
    // each cell and exactly zero on flat cells.
    std::vector<double> knots;
    for (double l : logr) knots.push_back(std::exp(l));
    auto cells = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(knots, mass);
    RadialDensity::Spec spec;
    spec.density = [cells, r0, r_hi, core_density, omega, n](double r) {
      if (r < r0) return core_density;
      if (r > r_hi) return 0.0;
      const auto& [rs, ms] = *cells;
      std::size_t i = static_cast<std::size_t>(std::upper_bound(rs.begin(), rs.end(), r) - rs.begin());
      i = std::clamp<std::size_t>(i, 1, rs.size() - 1) - 1;
      const double dm = ms[i + 1] - ms[i];
      if (!(dm > 0.0)) return 0.0;
      if (!(ms[i] > 0.0)) return dm / (rs[i + 1] - rs[i]) / (omega * std::pow(r, n - 1));
      const double beta = std::log(ms[i + 1] / ms[i]) / std::log(rs[i + 1] / rs[i]);
      return beta * ms[i] * std::pow(r / rs[i], beta) / (omega * std::pow(r, n));
    };
    spec.r_lo = 0.0;
    spec.r_hi = r_hi;
    spec.knots = std::move(knots);
    parts.push_back(Measure::radial(n, std::move(spec)));
  }
  return Measure::sum(std::move(parts));
}

LemmaARatio lemma_a_ratio(const RadialProfile& profile, const HessianParams& hp, double r_min, double r_max,
                          const QuadOpts& opts) {
  const WolffParams wp = hp.wolff();
  std::vector<double> radii;
  std::vector<double> values;
  bool any_positive = false;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double r = profile.radii[i];
    const double u = profile.u[i];
    if (u > 0.0) any_positive = true;
    if (!(r > 0.0) || !(u > 0.0) || !std::isfinite(u)) continue;
    if (r < r_min || (r_max > 0.0 && r > r_max)) continue;
    radii.push_back(r);
    values.push_back(u);
  }
  if (!any_positive) throw DomainError("lemma A: profile vanishes identically");
  if (radii.empty()) throw DomainError("lemma A: no positive nodes inside the radius window");

  const Measure mu = recover_hessian_measure(profile, hp);
  const GridFunction w = wolff_curve(mu, wp, radii, opts);

  LemmaARatio out;
  out.min_ratio = kInf;
  out.max_ratio = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double wi = w.value(i);
    if (!std::isfinite(wi)) continue;
    if (!(wi > 0.0)) throw DomainError("lemma A: Wolff potential vanishes where the profile is positive");
    const double ratio = values[i] / wi;
    out.radii.push_back(radii[i]);
    out.ratios.push_back(ratio);
    if (ratio < out.min_ratio) {
      out.min_ratio = ratio;
      out.r_at_min = radii[i];
    }
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.r_at_max = radii[i];
    }
  }
  out.nodes = out.ratios.size();
  if (out.nodes == 0) throw DomainError("lemma A: Wolff potential is infinite on every node");
  out.spread = (out.max_ratio - out.min_ratio) / out.max_ratio;
  out.k_est = std::max(out.max_ratio, 1.0 / out.min_ratio);
  return out;
}

}  // namespace wolffsys
