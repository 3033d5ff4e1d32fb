// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "wolffsys/grid_function.hpp"
#include "wolffsys/measure.hpp"
#include "wolffsys/params.hpp"

namespace wolffsys {

struct QuadOpts {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 4000;
  /// Lower truncation for points inside the support, relative to the
  /// support reach; the discarded piece is added from a local power law.
  double t_min_fraction = 1e-12;
};

/// W_{alpha,p} mu(x) = int_0^inf (mu(B(x,t)) / t^{n - alpha p})^{1/(p-1)} dt/t.
///
/// Purely atomic measures use the exact piecewise antiderivative; everything
/// else goes through wolff_potential_quadrature(). Returns +inf at atoms and
/// wherever the local mass growth is too slow for the integral to converge.
double wolff_potential(const Measure& m, const WolffParams& wp, std::span<const double> x,
                       const QuadOpts& opts = {});

/// Closed-form evaluation for atomic measures (throws DomainError if m has a
/// density part).
double wolff_potential_atomic(const Measure& m, const WolffParams& wp, std::span<const double> x);

/// Adaptive Gauss-Kronrod evaluation in s = log t, split at the points where
/// t -> mu(B(x,t)) is not smooth and truncated above at the radius where the
/// total-mass tail bound drops below opts.abs_tol.
double wolff_potential_quadrature(const Measure& m, const WolffParams& wp, std::span<const double> x,
                                  const QuadOpts& opts = {});

/// Potential at x = r e_1 for every grid radius. The outer extrapolation is
/// capped at the compact-support decay rate.
GridFunction wolff_curve(const Measure& m, const WolffParams& wp, std::span<const double> radii,
                         const QuadOpts& opts = {});

/// Point r e_1 in dimension n.
Point on_ray(int n, double r);

}  // namespace wolffsys
