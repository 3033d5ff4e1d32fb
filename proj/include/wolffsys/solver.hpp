// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wolffsys/grid_function.hpp"
#include "wolffsys/measure.hpp"
#include "wolffsys/params.hpp"
#include "wolffsys/wolff.hpp"

namespace wolffsys {

enum class Termination { converged, max_iter, diverged };

const char* to_string(Termination t) noexcept;

struct SolverOptions {
  /// Stop when both relative sup-norm residuals fall below tol.
  double tol = 1e-6;
  int max_iter = 100;
  /// An iterate above divergence_factor times the envelope is a blowup.
  double divergence_factor = 10.0;
  /// u_j <= u_{j+1} + monotone_tol is the audited ordering.
  double monotone_tol = 1e-10;
  /// lambda_sub is searched over 2^0 ... 2^-max_halvings.
  int max_halvings = 40;
  /// lambda_super is searched over 2^0 ... 2^max_doublings.
  int max_doublings = 40;
  bool override_capacity_check = false;
  QuadOpts quad;
};

struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_u;
  std::vector<double> residual_v;
  int monotonicity_violations = 0;
  /// Largest u_j - u_{j+1} (or v) seen, 0 if the iteration never decreased.
  double worst_monotonicity = 0.0;
  double lambda_sub = 0.0;
  double lambda_super = 0.0;
  /// Sandwich constants of the final iterate (est1, or est3 when mu or nu
  /// is present); +inf when infeasible.
  double c_lower = 0.0;
  double c_upper = 0.0;
  double c_sigma = 0.0;
  bool capacity_override = false;
  Termination termination = Termination::max_iter;
  std::string note;
};

struct Envelope {
  GridFunction u;
  GridFunction v;
};

struct SystemSolution {
  GridFunction u;
  GridFunction v;
  GridFunction u0;
  GridFunction v0;
  Envelope envelope;
  GridFunction w_sigma;
  GridFunction w_mu;
  GridFunction w_nu;
  SolveReport report;
};

/// Largest dyadic lambda with lambda (W sigma)^{g1} <= W(v0^{q1} d sigma) and
/// lambda (W sigma)^{g2} <= W(u0^{q2} d sigma) on the grid, for
/// (u0, v0) = lambda ((W sigma)^{g1}, (W sigma)^{g2}). Uses the exact
/// homogeneity W((c f) d sigma) = c^{1/(p-1)} W(f d sigma), so only two
/// potentials are evaluated. Throws CalibrationFailure if 2^-max_halvings
/// still fails.
double calibrate_lambda_sub(const Measure& sigma, const SystemParams& sp, std::span<const double> radii,
                            const QuadOpts& opts = {}, int max_halvings = 40);
double calibrate_lambda_sub(const Measure& sigma, const GridFunction& w_sigma, const SystemParams& sp,
                            const QuadOpts& opts = {}, int max_halvings = 40);

/// U = lambda (W mu + W nu + W sigma + (W sigma)^{g1}), V likewise with g2.
Envelope supersolution_envelope(const GridFunction& w_sigma, const GridFunction& w_mu, const GridFunction& w_nu,
                                const SystemParams& sp, double lambda);
Envelope supersolution_envelope(const Measure& sigma, const Measure& mu, const Measure& nu, const SystemParams& sp,
                                double lambda, std::span<const double> radii, const QuadOpts& opts = {});

/// Monotone successive approximation
///   u_{j+1} = W(v_j^{q1} d sigma + d mu),  v_{j+1} = W(u_j^{q2} d sigma + d nu)
/// from the calibrated sub-solution. Pass Measure::zero(n) for absent mu/nu.
///
/// Throws DomainError when sigma has point masses (capacity ball proxy is
/// infinite) unless opts.override_capacity_check. Non-convergence is
/// reported through report.termination, not thrown; see require_converged().
SystemSolution solve_system(const Measure& sigma, const Measure& mu, const Measure& nu, const SystemParams& sp,
                            std::span<const double> radii, const SolverOptions& opts = {});

/// Throws Error(diverged) or Error(max_iter) for a failed run.
void require_converged(const SolveReport& report);

/// key=value text with the residual histories as comma-separated lists;
/// lossless like serialize(EstimateReport).
std::string serialize(const SolveReport& report);
SolveReport parse_solve_report(std::string_view text);

/// 200 nodes geometric on [1e-3, 1e3].
std::vector<double> default_solver_grid();

}  // namespace wolffsys
