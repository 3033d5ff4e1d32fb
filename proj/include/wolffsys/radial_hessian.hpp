// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wolffsys/measure.hpp"
#include "wolffsys/params.hpp"
#include "wolffsys/wolff.hpp"

namespace wolffsys {

/// Binomial coefficient C(n, k) as a double; 0 outside 0 <= k <= n.
double binomial(int n, int k);

/// k-th elementary symmetric function of the Hessian eigenvalues of a radial
/// function: ddu once and du/r with multiplicity n-1.
double fk_radial(int n, int k, double du, double ddu, double r);

/// Radial profile u(r) with its derivative, sampled on increasing radii.
///
/// For Dirichlet outputs boundary_radius is R, u(R) = 0 and source_mass holds
/// g(B_r) at every node.
struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> u;
  std::vector<double> du;
  std::vector<double> source_mass;
  double boundary_radius = 0.0;

  std::size_t size() const noexcept { return radii.size(); }
};

/// mu_k[v](B_r) = omega C(n-1,k-1) r^{n-k} v'(r)^k / k for v = -u at node i.
/// Throws DomainError when v' < 0 beyond roundoff.
double hessian_measure_ball(const RadialProfile& profile, const HessianParams& hp, std::size_t i);

/// As above at an arbitrary radius inside the grid, with u' interpolated
/// log-log between nodes.
double hessian_measure_ball(const RadialProfile& profile, const HessianParams& hp, double r);

/// Radial solution of F_k[-u] = g on B_R, u = 0 on the boundary, on the nodes
/// of radii below R plus R itself.
///
/// Uses v'(r) = [k g(B_r) / (omega C(n-1,k-1) r^{n-k})]^{1/k} and
/// u(r) = int_r^R v'. A node at r = 0 gets the integral of a power law
/// fitted to v' on the first two positive nodes (+inf if it diverges).
RadialProfile solve_dirichlet_radial(const Measure& g, const HessianParams& hp, double R,
                                     std::span<const double> radii);

/// mu_k[-u] rebuilt from the ball masses of a profile: an atom at the origin
/// plus a density whose cumulative mass is a power law between nodes.
Measure recover_hessian_measure(const RadialProfile& profile, const HessianParams& hp);

struct LemmaARatio {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  /// (max - min) / max.
  double spread = 0.0;
  /// max(max_ratio, 1/min_ratio): the smallest K with K^{-1} W <= u <= K W.
  double k_est = 0.0;
  double r_at_min = 0.0;
  double r_at_max = 0.0;
  std::size_t nodes = 0;
  std::vector<double> radii;
  std::vector<double> ratios;
};

/// Extremes of u / W_k mu over finite nodes with u > 0 inside [r_min, r_max],
/// mu = mu_k[-u] recovered from the profile.
LemmaARatio lemma_a_ratio(const RadialProfile& profile, const HessianParams& hp, double r_min = 0.0,
                          double r_max = 0.0, const QuadOpts& opts = {});

}  // namespace wolffsys
