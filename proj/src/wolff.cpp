// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include "wolffsys/wolff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "wolffsys/error.hpp"
#include "wolffsys/parallel.hpp"
#include "wolffsys/quadrature.hpp"

namespace wolffsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDedup = 1e-14;

}  // namespace

Point on_ray(int n, double r) {
  Point x(static_cast<std::size_t>(n), 0.0);
  x[0] = r;
  return x;
}

double wolff_potential_atomic(const Measure& m, const WolffParams& wp, std::span<const double> x) {
  if (m.has_density()) throw DomainError("closed-form Wolff potential needs a purely atomic measure");
  std::vector<std::pair<double, double>> rings;  // (distance, mass)
  for (const auto& a : m.atoms()) rings.emplace_back(distance(a.position, x), a.mass);
  if (rings.empty()) return 0.0;
  std::sort(rings.begin(), rings.end());

  // Merge coincident distances.
  std::vector<std::pair<double, double>> merged;
  for (const auto& [d, mass] : rings) {
    if (!merged.empty() && d - merged.back().first <= kDedup * std::max(1.0, d))
      merged.back().second += mass;
    else
      merged.emplace_back(d, mass);
  }
  if (merged.front().first <= kDedup * std::max(1.0, norm(x))) return kInf;

  const double e = wp.inner_power();
  const double a = wp.tail_exponent();
  double cumulative = 0.0;
  double value = 0.0;
  for (std::size_t j = 0; j < merged.size(); ++j) {
    cumulative += merged[j].second;
    const double lo = std::pow(merged[j].first, -a);
    const double hi = j + 1 < merged.size() ? std::pow(merged[j + 1].first, -a) : 0.0;
    value += std::pow(cumulative, e) * (lo - hi) / a;
  }
  return value;
}

double wolff_potential_quadrature(const Measure& m, const WolffParams& wp, std::span<const double> x,
                                  const QuadOpts& opts) {
  if (m.dimension() != wp.n()) throw DomainError("measure and Wolff parameters differ in dimension");
  const Measure::Geometry geom = m.geometry(x);
  if (!(geom.total_mass > 0.0)) return 0.0;
  if (geom.atom_at_x || std::isinf(geom.total_mass)) return kInf;

  const double D = wp.riesz_exponent();
  const double e = wp.inner_power();
  auto integrand = [&](double s) {
    const double t = std::exp(s);
    const double mass = m.ball_mass(x, t);
    if (!(mass > 0.0)) return 0.0;
    return std::exp(e * (std::log(mass) - D * s));
  };

  double t_lo = geom.support_distance;
  double low_piece = 0.0;
  if (!(t_lo > 0.0)) {
    t_lo = opts.t_min_fraction * geom.support_reach;
    const double m1 = m.ball_mass(x, t_lo);
    const double m2 = m.ball_mass(x, 2.0 * t_lo);
    if (m1 > 0.0 && m2 > 0.0) {
      const double growth = std::log(m2 / m1) / std::log(2.0);
      if (!(growth > D * (1.0 + 1e-9))) return kInf;
      low_piece = std::pow(m1 / std::pow(t_lo, D), e) / (e * (growth - D));
    }
  }

  // Tail bound: int_T^inf (M/t^D)^e dt/t = M^e T^{-De} / (De).
  const double de = D * e;
  const double t_tail = std::pow(std::pow(geom.total_mass, e) / (de * opts.abs_tol), 1.0 / de);
  const double t_hi = std::max(geom.support_reach, t_tail);

  std::vector<double> pts;
  pts.reserve(geom.breakpoints.size() + 2);
  pts.push_back(std::log(t_lo));
  for (double b : geom.breakpoints)
    if (b > t_lo && b < t_hi) pts.push_back(std::log(b));
  pts.push_back(std::log(t_hi));

  const auto res = quad::integrate(integrand, pts, opts.rel_tol, opts.abs_tol, opts.max_subdivisions);
  if (std::isinf(res.value)) return kInf;
  if (!res.converged || std::isnan(res.value)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "Wolff quadrature: error estimate %.3g exceeds tolerance after %d intervals",
                  res.error, res.intervals);
    throw QuadratureFailure(buf);
  }
  return res.value + low_piece;
}

double wolff_potential(const Measure& m, const WolffParams& wp, std::span<const double> x,
                       const QuadOpts& opts) {
  if (m.dimension() != wp.n()) throw DomainError("measure and Wolff parameters differ in dimension");
  if (!m.has_density()) return wolff_potential_atomic(m, wp, x);
  return wolff_potential_quadrature(m, wp, x, opts);
}

GridFunction wolff_curve(const Measure& m, const WolffParams& wp, std::span<const double> radii,
                         const QuadOpts& opts) {
  std::vector<double> r(radii.begin(), radii.end());
  std::vector<double> values(r.size());
  parallel_for(r.size(), [&](std::size_t i) { values[i] = wolff_potential(m, wp, on_ray(wp.n(), r[i]), opts); });
  return GridFunction(std::move(r), std::move(values), wp.tail_exponent());
}

}  // namespace wolffsys
