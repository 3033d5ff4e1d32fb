/* Copyright 2026 The wolffsys Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of libwolffsys. Objects are opaque handles owned by the caller
 * and released with the matching *_free function. Every fallible call
 * returns a wsys_status; on failure wsys_last_error() describes the problem
 * for the calling thread. Accessor pointers stay valid until the owning
 * handle is freed.
 */
#ifndef WOLFFSYS_WOLFFSYS_H
#define WOLFFSYS_WOLFFSYS_H

#include <stddef.h>

#if defined(WSYS_BUILDING_LIBRARY)
#define WSYS_API __attribute__((visibility("default")))
#else
#define WSYS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wsys_status {
  WSYS_OK = 0,
  WSYS_DOMAIN = 1,
  WSYS_QUADRATURE = 2,
  WSYS_CALIBRATION = 3,
  WSYS_DIVERGED = 4,
  WSYS_MAX_ITER = 5,
  WSYS_INFEASIBLE = 6,
  WSYS_INVALID_ARGUMENT = 7,
  WSYS_INTERNAL = 8
} wsys_status;

typedef struct wsys_measure wsys_measure;
typedef struct wsys_curve wsys_curve;
typedef struct wsys_profile wsys_profile;
typedef struct wsys_solution wsys_solution;
typedef struct wsys_estimate wsys_estimate;

/* Dimension and exponents. k > 0 selects the k-Hessian case
 * (alpha = 2k/(k+1), p = k+1, alpha and p ignored); k == 0 uses alpha, p.
 * q1, q2 are only read by system-level calls. */
typedef struct wsys_problem {
  int n;
  int k;
  double alpha;
  double p;
  double q1;
  double q2;
} wsys_problem;

typedef struct wsys_quad_opts {
  double rel_tol;
  double abs_tol;
  int max_subdivisions;
  double t_min_fraction;
} wsys_quad_opts;

typedef struct wsys_solver_opts {
  double tol;
  int max_iter;
  double divergence_factor;
  double monotone_tol;
  int max_halvings;
  int max_doublings;
  int override_capacity_check;
  wsys_quad_opts quad;
} wsys_solver_opts;

typedef enum wsys_curve_kind {
  WSYS_CURVE_U = 0,
  WSYS_CURVE_V = 1,
  WSYS_CURVE_U0 = 2,
  WSYS_CURVE_V0 = 3,
  WSYS_CURVE_ENVELOPE_U = 4,
  WSYS_CURVE_ENVELOPE_V = 5,
  WSYS_CURVE_W_SIGMA = 6,
  WSYS_CURVE_W_MU = 7,
  WSYS_CURVE_W_NU = 8
} wsys_curve_kind;

typedef struct wsys_solve_summary {
  int iterations;
  int converged;      /* 1 when termination is "converged" */
  int diverged;
  int monotonicity_violations;
  double worst_monotonicity;
  double lambda_sub;
  double lambda_super;
  double c_lower;
  double c_upper;
  double c_sigma;
} wsys_solve_summary;

WSYS_API const char* wsys_version(void);
WSYS_API const char* wsys_status_string(wsys_status status);
/* Message of the last failed call on this thread; "" if none. */
WSYS_API const char* wsys_last_error(void);
/* Frees strings returned through char** out-parameters. */
WSYS_API void wsys_string_free(char* s);

WSYS_API wsys_quad_opts wsys_quad_opts_default(void);
WSYS_API wsys_solver_opts wsys_solver_opts_default(void);

WSYS_API wsys_status wsys_gammas(double p, double q1, double q2, double* gamma1, double* gamma2);
/* Validates the problem (q1, q2 only when either is nonzero) and fills
 * alpha and p in the Hessian case. */
WSYS_API wsys_status wsys_problem_check(wsys_problem* problem);

/* ---- measures ---- */
WSYS_API wsys_status wsys_measure_zero(int n, wsys_measure** out);
WSYS_API wsys_status wsys_measure_atomic(int n, const double* positions, const double* masses, size_t count,
                                         wsys_measure** out);
WSYS_API wsys_status wsys_measure_uniform_ball(int n, double radius, double density, wsys_measure** out);
WSYS_API wsys_status wsys_measure_bump(int n, double radius, double amplitude, wsys_measure** out);
WSYS_API wsys_status wsys_measure_counterexample(int n, double q, double beta, wsys_measure** out);
WSYS_API wsys_status wsys_measure_sum(const wsys_measure* const* parts, size_t count, wsys_measure** out);
WSYS_API wsys_status wsys_measure_scaled(double c, const wsys_measure* m, wsys_measure** out);
WSYS_API wsys_status wsys_measure_ball_mass(const wsys_measure* m, const double* x, double t, double* out);
WSYS_API wsys_status wsys_measure_total_mass(const wsys_measure* m, double* out);
WSYS_API int wsys_measure_dimension(const wsys_measure* m);
WSYS_API void wsys_measure_free(wsys_measure* m);

/* ---- Wolff potentials ---- */
WSYS_API wsys_status wsys_wolff_potential(const wsys_measure* m, const wsys_problem* problem, const double* x,
                                          const wsys_quad_opts* opts, double* out);
WSYS_API wsys_status wsys_wolff_curve(const wsys_measure* m, const wsys_problem* problem, const double* radii,
                                      size_t count, const wsys_quad_opts* opts, wsys_curve** out);

WSYS_API size_t wsys_curve_size(const wsys_curve* c);
WSYS_API const double* wsys_curve_radii(const wsys_curve* c);
WSYS_API const double* wsys_curve_values(const wsys_curve* c);
WSYS_API double wsys_curve_eval(const wsys_curve* c, double r);
WSYS_API void wsys_curve_free(wsys_curve* c);

/* ---- radial k-Hessian ---- */
WSYS_API wsys_status wsys_fk_radial(int n, int k, double du, double ddu, double r, double* out);
WSYS_API wsys_status wsys_dirichlet(const wsys_measure* source, const wsys_problem* problem, double boundary_radius,
                                    const double* radii, size_t count, wsys_profile** out);
WSYS_API size_t wsys_profile_size(const wsys_profile* p);
WSYS_API const double* wsys_profile_radii(const wsys_profile* p);
WSYS_API const double* wsys_profile_u(const wsys_profile* p);
WSYS_API const double* wsys_profile_du(const wsys_profile* p);
WSYS_API const double* wsys_profile_source_mass(const wsys_profile* p);
WSYS_API wsys_status wsys_profile_hessian_mass(const wsys_profile* p, const wsys_problem* problem, size_t index,
                                               double* out);
WSYS_API void wsys_profile_free(wsys_profile* p);

/* Lemma A ratios u / W_k mu over [r_min, r_max] (r_max <= 0: no upper cut).
 * Constants: min_ratio, max_ratio, spread, K. */
WSYS_API wsys_status wsys_lemma_a(const wsys_profile* p, const wsys_problem* problem, double r_min, double r_max,
                                  const wsys_quad_opts* opts, wsys_estimate** out);

/* ---- solver ---- */
/* mu and nu may be NULL. Returns WSYS_DIVERGED or WSYS_MAX_ITER for a
 * failed run and still hands back the solution for inspection. */
WSYS_API wsys_status wsys_solve(const wsys_measure* sigma, const wsys_measure* mu, const wsys_measure* nu,
                                const wsys_problem* problem, const double* radii, size_t count,
                                const wsys_solver_opts* opts, wsys_solution** out);
WSYS_API const wsys_curve* wsys_solution_curve(const wsys_solution* s, wsys_curve_kind which);
WSYS_API wsys_solve_summary wsys_solution_summary(const wsys_solution* s);
WSYS_API size_t wsys_solution_residuals(const wsys_solution* s, const double** residual_u,
                                        const double** residual_v);
WSYS_API wsys_status wsys_solution_report_text(const wsys_solution* s, char** out);
WSYS_API void wsys_solution_free(wsys_solution* s);

/* ---- estimates ---- */
WSYS_API wsys_status wsys_check_est1(const wsys_curve* u, const wsys_curve* v, const wsys_curve* w_sigma,
                                     const wsys_problem* problem, int exploratory, wsys_estimate** out);
WSYS_API wsys_status wsys_check_est3(const wsys_curve* u, const wsys_curve* v, const wsys_curve* w_sigma,
                                     const wsys_curve* w_mu, const wsys_curve* w_nu, const wsys_problem* problem,
                                     int exploratory, wsys_estimate** out);
WSYS_API wsys_status wsys_check_est2(const wsys_measure* sigma, const wsys_problem* problem, const double* radii,
                                     size_t count, const wsys_quad_opts* opts, int exploratory,
                                     wsys_estimate** out);
WSYS_API wsys_status wsys_lemma_b(const wsys_measure* omega, double r, const wsys_problem* problem,
                                  const double* radii, size_t count, const wsys_quad_opts* opts,
                                  wsys_estimate** out);
WSYS_API wsys_status wsys_lemma_c(const wsys_measure* omega, const wsys_measure* mu, double r,
                                  const wsys_problem* problem, const double* radii, size_t count,
                                  const wsys_quad_opts* opts, wsys_estimate** out);
WSYS_API wsys_status wsys_lemma_d(const wsys_measure* sigma, double s, const wsys_problem* problem, const double* x,
                                  const double* big_radii, size_t big_count, const double* radii, size_t count,
                                  const wsys_quad_opts* opts, wsys_estimate** out);
WSYS_API wsys_status wsys_capacity_proxy(const wsys_measure* sigma, const wsys_problem* problem,
                                         wsys_estimate** out);

WSYS_API const char* wsys_estimate_id(const wsys_estimate* e);
WSYS_API int wsys_estimate_pass(const wsys_estimate* e);
WSYS_API int wsys_estimate_exploratory(const wsys_estimate* e);
WSYS_API const char* wsys_estimate_note(const wsys_estimate* e);
WSYS_API size_t wsys_estimate_worst_node(const wsys_estimate* e);
WSYS_API double wsys_estimate_worst_radius(const wsys_estimate* e);
WSYS_API size_t wsys_estimate_constant_count(const wsys_estimate* e);
WSYS_API const char* wsys_estimate_constant_name(const wsys_estimate* e, size_t i);
WSYS_API double wsys_estimate_constant_value(const wsys_estimate* e, size_t i);
WSYS_API wsys_status wsys_estimate_constant(const wsys_estimate* e, const char* name, double* out);
WSYS_API size_t wsys_estimate_size(const wsys_estimate* e);
WSYS_API const double* wsys_estimate_radii(const wsys_estimate* e);
WSYS_API const double* wsys_estimate_margins(const wsys_estimate* e);
WSYS_API wsys_status wsys_estimate_to_text(const wsys_estimate* e, char** out);
WSYS_API wsys_status wsys_estimate_from_text(const char* text, wsys_estimate** out);
WSYS_API void wsys_estimate_free(wsys_estimate* e);

#ifdef __cplusplus
}
#endif

#endif /* WOLFFSYS_WOLFFSYS_H */
