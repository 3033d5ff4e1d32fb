// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wolffsys/grid_function.hpp"
#include "wolffsys/measure.hpp"
#include "wolffsys/params.hpp"
#include "wolffsys/wolff.hpp"

namespace wolffsys {

/// Outcome of a nodewise inequality check.
///
/// margins[i] is the check's quantity at radii[i] (the constant that node
/// alone requires, or a difference for monotonicity checks). Constants are
/// kept in insertion order so serialisation is stable.
struct EstimateReport {
  std::string id;
  std::vector<double> radii;
  std::vector<double> margins;
  std::vector<std::pair<std::string, double>> constants;
  bool pass = false;
  /// Report-only run; pass carries no meaning.
  bool exploratory = false;
  std::size_t worst_node = 0;
  double worst_radius = 0.0;
  std::string note;

  void set_constant(const std::string& name, double value);
  /// Throws DomainError when absent.
  double constant(std::string_view name) const;
  bool has_constant(std::string_view name) const;
};

/// key=value text, one entry per line, doubles printed with 17 significant
/// digits so parse(serialize(r)) == r.
std::string serialize(const EstimateReport& report);
EstimateReport parse_estimate_report(std::string_view text);

/// Smallest c >= 1 with c^{-1} (W sigma)^{g_i} <= u_i <= c (W sigma + (W sigma)^{g_i})
/// for (u_1, u_2) = (u, v). Constants: c, c_lower, c_upper. Throws
/// Infeasible when a node forces c = inf, unless exploratory.
EstimateReport check_est1(const GridFunction& u, const GridFunction& v, const GridFunction& w_sigma,
                          const SystemParams& sp, bool exploratory = false);
EstimateReport check_est1(const GridFunction& u, const GridFunction& v, const Measure& sigma,
                          const SystemParams& sp, const QuadOpts& opts = {});

/// The inhomogeneous sandwich: the upper bound gains W mu + W nu.
EstimateReport check_est3(const GridFunction& u, const GridFunction& v, const GridFunction& w_sigma,
                          const GridFunction& w_mu, const GridFunction& w_nu, const SystemParams& sp,
                          bool exploratory = false);

/// Smallest lambda with W((W sigma)^{q1 g2} d sigma) <= lambda (W sigma + (W sigma)^{g1})
/// and the twin inequality, over the grid. Constant: lambda. Throws
/// Infeasible on an infinite left side unless exploratory.
EstimateReport check_est2(const Measure& sigma, const SystemParams& sp, std::span<const double> radii,
                          const QuadOpts& opts = {}, bool exploratory = false);

/// Largest kappa with W((W omega)^r d omega) >= kappa^{r/(p-1)} (W omega)^{r/(p-1)+1}
/// over nodes where both sides are finite. Constant: kappa (0 when no node
/// qualifies, which is recorded in the note).
EstimateReport lemma_b_kappa(const Measure& omega, double r, const WolffParams& wp, std::span<const double> radii,
                             const QuadOpts& opts = {});

/// Adds d mu inside the left side of lemma_b_kappa and records
/// W((W omega)^r d omega + d mu) - W((W omega)^r d omega) per node.
/// Passes when no margin is below -tol times the larger side.
EstimateReport lemma_c_check(const Measure& omega, const Measure& mu, double r, const WolffParams& wp,
                             std::span<const double> radii, const QuadOpts& opts = {}, double tol = 1e-8);

/// sup over R of int_{B(x,R)} (W sigma)^s d sigma / (sigma(B(x,2R)) + sigma(B(x,R))).
/// W sigma is sampled on radii. Constant: c. Margins are the per-R ratios.
EstimateReport lemma_d_const(const Measure& sigma, double s, const WolffParams& wp, std::span<const double> x,
                             std::span<const double> big_radii, std::span<const double> radii,
                             const QuadOpts& opts = {});

struct BallFamily {
  std::vector<Point> centers;
  std::vector<double> radii;
};

/// Centres {0} plus every atom; 41 radii geometric on [scale/100, scale]
/// with scale the support radius of sigma about the origin.
BallFamily default_ball_family(const Measure& sigma);

/// C_sigma = max sigma(B(x,r)) / r^{n - alpha p} over the family, +inf when
/// sigma has atoms. Constant: C_sigma. Margins are per-radius maxima over
/// centres. pass is C_sigma < inf.
EstimateReport capacity_proxy_check(const Measure& sigma, const WolffParams& wp, const BallFamily& family);
EstimateReport capacity_proxy_check(const Measure& sigma, const WolffParams& wp);

}  // namespace wolffsys
