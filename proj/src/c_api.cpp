// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include "wolffsys/wolffsys.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wolffsys/error.hpp"
#include "wolffsys/measure.hpp"
#include "wolffsys/params.hpp"
#include "wolffsys/radial_hessian.hpp"
#include "wolffsys/solver.hpp"
#include "wolffsys/verify.hpp"
#include "wolffsys/wolff.hpp"

namespace ws = wolffsys;

struct wsys_measure {
  ws::Measure m;
};
struct wsys_curve {
  ws::GridFunction f;
};
struct wsys_profile {
  ws::RadialProfile p;
};
struct wsys_solution {
  ws::SystemSolution s;
  wsys_curve curves[9];
};
struct wsys_estimate {
  ws::EstimateReport r;
};

namespace {

thread_local std::string g_last_error;

wsys_status fail(wsys_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

wsys_status from_kind(ws::ErrorKind kind) {
  switch (kind) {
    case ws::ErrorKind::domain: return WSYS_DOMAIN;
    case ws::ErrorKind::quadrature_failure: return WSYS_QUADRATURE;
    case ws::ErrorKind::calibration_failure: return WSYS_CALIBRATION;
    case ws::ErrorKind::diverged: return WSYS_DIVERGED;
    case ws::ErrorKind::max_iter: return WSYS_MAX_ITER;
    case ws::ErrorKind::infeasible: return WSYS_INFEASIBLE;
  }
  return WSYS_INTERNAL;
}

// Runs f, translating exceptions into status codes and the thread-local message.
template <class F>
wsys_status guarded(F&& f) noexcept {
  try {
    g_last_error.clear();
    return f();
  } catch (const ws::Error& e) {
    return fail(from_kind(e.kind()), e.what());
  } catch (const std::invalid_argument& e) {
    return fail(WSYS_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(WSYS_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WSYS_INTERNAL, e.what());
  } catch (...) {
    return fail(WSYS_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

std::span<const double> span_of(const double* data, size_t count) {
  require(count == 0 || data != nullptr, "null array with nonzero length");
  return {data, count};
}

ws::QuadOpts quad(const wsys_quad_opts* o) {
  ws::QuadOpts q;
  if (!o) return q;
  require(o->rel_tol > 0 && o->abs_tol > 0, "quadrature tolerances must be positive");
  require(o->max_subdivisions > 0, "max_subdivisions must be positive");
  require(o->t_min_fraction > 0 && o->t_min_fraction < 1, "t_min_fraction must lie in (0, 1)");
  q.rel_tol = o->rel_tol;
  q.abs_tol = o->abs_tol;
  q.max_subdivisions = o->max_subdivisions;
  q.t_min_fraction = o->t_min_fraction;
  return q;
}

ws::HessianParams hessian(const wsys_problem* pr) {
  require(pr != nullptr, "null problem");
  if (pr->k <= 0) throw ws::DomainError("this operation needs a k-Hessian problem (k >= 1)");
  return ws::HessianParams::make(pr->n, pr->k);
}

ws::WolffParams wolff(const wsys_problem* pr) {
  require(pr != nullptr, "null problem");
  if (pr->k < 0) throw ws::DomainError("Hessian order k must be >= 0");
  if (pr->k > 0) return hessian(pr).wolff();
  return ws::WolffParams::make(pr->n, pr->alpha, pr->p);
}

ws::SystemParams system_params(const wsys_problem* pr) {
  if (pr && pr->k > 0) return ws::SystemParams::make(hessian(pr), pr->q1, pr->q2);
  return ws::SystemParams::make(wolff(pr), pr->q1, pr->q2);
}

template <class T, class... Args>
wsys_status emit(T** out, Args&&... args) {
  *out = new T{std::forward<Args>(args)...};
  return WSYS_OK;
}

wsys_status copy_string(const std::string& s, char** out) {
  require(out != nullptr, "null output");
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
  return WSYS_OK;
}

ws::EstimateReport lemma_a_report(const ws::LemmaARatio& a) {
  ws::EstimateReport r;
  r.id = "lemA";
  r.radii = a.radii;
  r.margins = a.ratios;
  r.set_constant("min_ratio", a.min_ratio);
  r.set_constant("max_ratio", a.max_ratio);
  r.set_constant("spread", a.spread);
  r.set_constant("K", a.k_est);
  r.set_constant("r_at_min", a.r_at_min);
  r.set_constant("r_at_max", a.r_at_max);
  r.pass = a.min_ratio > 0 && std::isfinite(a.max_ratio);
  for (size_t i = 0; i < a.radii.size(); ++i)
    if (a.radii[i] == a.r_at_min) r.worst_node = i;
  r.worst_radius = a.r_at_min;
  return r;
}

}  // namespace

extern "C" {

const char* wsys_version(void) { return "0.1.0"; }

const char* wsys_status_string(wsys_status status) {
  switch (status) {
    case WSYS_OK: return "ok";
    case WSYS_DOMAIN: return "domain error";
    case WSYS_QUADRATURE: return "quadrature failure";
    case WSYS_CALIBRATION: return "calibration failure";
    case WSYS_DIVERGED: return "diverged";
    case WSYS_MAX_ITER: return "max iterations";
    case WSYS_INFEASIBLE: return "infeasible";
    case WSYS_INVALID_ARGUMENT: return "invalid argument";
    case WSYS_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* wsys_last_error(void) { return g_last_error.c_str(); }

void wsys_string_free(char* s) { std::free(s); }

wsys_quad_opts wsys_quad_opts_default(void) {
  const ws::QuadOpts q;
  return {q.rel_tol, q.abs_tol, q.max_subdivisions, q.t_min_fraction};
}

wsys_solver_opts wsys_solver_opts_default(void) {
  const ws::SolverOptions o;
  return {o.tol,          o.max_iter,      o.divergence_factor, o.monotone_tol, o.max_halvings,
          o.max_doublings, o.override_capacity_check ? 1 : 0, wsys_quad_opts_default()};
}

wsys_status wsys_gammas(double p, double q1, double q2, double* gamma1, double* gamma2) {
  return guarded([&] {
    require(gamma1 && gamma2, "null output");
    const ws::Gammas g = ws::gammas(p, q1, q2);
    *gamma1 = g.gamma1;
    *gamma2 = g.gamma2;
    return WSYS_OK;
  });
}

wsys_status wsys_problem_check(wsys_problem* problem) {
  return guarded([&] {
    const ws::WolffParams wp = wolff(problem);
    if (problem->q1 != 0.0 || problem->q2 != 0.0) system_params(problem);
    problem->alpha = wp.alpha();
    problem->p = wp.p();
    return WSYS_OK;
  });
}

// ---- measures ----

wsys_status wsys_measure_zero(int n, wsys_measure** out) {
  return guarded([&] {
    require(out, "null output");
    return emit(out, ws::Measure::zero(n));
  });
}

wsys_status wsys_measure_atomic(int n, const double* positions, const double* masses, size_t count,
                                wsys_measure** out) {
  return guarded([&] {
    require(out, "null output");
    require(n > 0, "dimension must be positive");
    const auto pos = span_of(positions, count * static_cast<size_t>(n));
    const auto mass = span_of(masses, count);
    std::vector<ws::Atom> atoms;
    for (size_t i = 0; i < count; ++i)
      atoms.push_back({ws::Point(pos.begin() + i * n, pos.begin() + (i + 1) * n), mass[i]});
    return emit(out, ws::Measure::atomic(n, std::move(atoms)));
  });
}

wsys_status wsys_measure_uniform_ball(int n, double radius, double density, wsys_measure** out) {
  return guarded([&] {
    require(out, "null output");
    return emit(out, ws::Measure::uniform_ball(n, radius, density));
  });
}

wsys_status wsys_measure_bump(int n, double radius, double amplitude, wsys_measure** out) {
  return guarded([&] {
    require(out, "null output");
    return emit(out, ws::Measure::bump(n, radius, amplitude));
  });
}

wsys_status wsys_measure_counterexample(int n, double q, double beta, wsys_measure** out) {
  return guarded([&] {
    require(out, "null output");
    return emit(out, ws::preset_counterexample(n, q, beta));
  });
}

wsys_status wsys_measure_sum(const wsys_measure* const* parts, size_t count, wsys_measure** out) {
  return guarded([&] {
    require(out, "null output");
    require(count > 0 && parts, "sum needs at least one part");
    std::vector<ws::Measure> ms;
    for (size_t i = 0; i < count; ++i) {
      require(parts[i], "null measure in sum");
      ms.push_back(parts[i]->m);
    }
    return emit(out, ws::Measure::sum(std::move(ms)));
  });
}

wsys_status wsys_measure_scaled(double c, const wsys_measure* m, wsys_measure** out) {
  return guarded([&] {
    require(out && m, "null argument");
    return emit(out, ws::Measure::scaled(c, m->m));
  });
}

wsys_status wsys_measure_ball_mass(const wsys_measure* m, const double* x, double t, double* out) {
  return guarded([&] {
    require(out && m, "null argument");
    *out = m->m.ball_mass(span_of(x, static_cast<size_t>(m->m.dimension())), t);
    return WSYS_OK;
  });
}

wsys_status wsys_measure_total_mass(const wsys_measure* m, double* out) {
  return guarded([&] {
    require(out && m, "null argument");
    *out = m->m.total_mass();
    return WSYS_OK;
  });
}

int wsys_measure_dimension(const wsys_measure* m) { return m ? m->m.dimension() : 0; }

void wsys_measure_free(wsys_measure* m) { delete m; }

// ---- Wolff potentials ----

wsys_status wsys_wolff_potential(const wsys_measure* m, const wsys_problem* problem, const double* x,
                                 const wsys_quad_opts* opts, double* out) {
  return guarded([&] {
    require(out && m, "null argument");
    const ws::WolffParams wp = wolff(problem);
    require(wp.n() == m->m.dimension(), "problem and measure dimensions differ");
    *out = ws::wolff_potential(m->m, wp, span_of(x, static_cast<size_t>(wp.n())), quad(opts));
    return WSYS_OK;
  });
}

wsys_status wsys_wolff_curve(const wsys_measure* m, const wsys_problem* problem, const double* radii, size_t count,
                             const wsys_quad_opts* opts, wsys_curve** out) {
  return guarded([&] {
    require(out && m, "null argument");
    const ws::WolffParams wp = wolff(problem);
    require(wp.n() == m->m.dimension(), "problem and measure dimensions differ");
    return emit(out, ws::wolff_curve(m->m, wp, span_of(radii, count), quad(opts)));
  });
}

size_t wsys_curve_size(const wsys_curve* c) { return c ? c->f.size() : 0; }
const double* wsys_curve_radii(const wsys_curve* c) { return c ? c->f.radii().data() : nullptr; }
const double* wsys_curve_values(const wsys_curve* c) { return c ? c->f.values().data() : nullptr; }
double wsys_curve_eval(const wsys_curve* c, double r) {
  if (!c || c->f.empty()) return std::numeric_limits<double>::quiet_NaN();
  return c->f(r);
}
void wsys_curve_free(wsys_curve* c) { delete c; }

// ---- radial k-Hessian ----

wsys_status wsys_fk_radial(int n, int k, double du, double ddu, double r, double* out) {
  return guarded([&] {
    require(out, "null output");
    *out = ws::fk_radial(n, k, du, ddu, r);
    return WSYS_OK;
  });
}

wsys_status wsys_dirichlet(const wsys_measure* source, const wsys_problem* problem, double boundary_radius,
                           const double* radii, size_t count, wsys_profile** out) {
  return guarded([&] {
    require(out && source, "null argument");
    return emit(out, ws::solve_dirichlet_radial(source->m, hessian(problem), boundary_radius, span_of(radii, count)));
  });
}

size_t wsys_profile_size(const wsys_profile* p) { return p ? p->p.size() : 0; }
const double* wsys_profile_radii(const wsys_profile* p) { return p ? p->p.radii.data() : nullptr; }
const double* wsys_profile_u(const wsys_profile* p) { return p ? p->p.u.data() : nullptr; }
const double* wsys_profile_du(const wsys_profile* p) { return p ? p->p.du.data() : nullptr; }
const double* wsys_profile_source_mass(const wsys_profile* p) { return p ? p->p.source_mass.data() : nullptr; }

wsys_status wsys_profile_hessian_mass(const wsys_profile* p, const wsys_problem* problem, size_t index, double* out) {
  return guarded([&] {
    require(out && p, "null argument");
    require(index < p->p.size(), "profile index out of range");
    *out = ws::hessian_measure_ball(p->p, hessian(problem), index);
    return WSYS_OK;
  });
}

void wsys_profile_free(wsys_profile* p) { delete p; }

wsys_status wsys_lemma_a(const wsys_profile* p, const wsys_problem* problem, double r_min, double r_max,
                         const wsys_quad_opts* opts, wsys_estimate** out) {
  return guarded([&] {
    require(out && p, "null argument");
    return emit(out, lemma_a_report(ws::lemma_a_ratio(p->p, hessian(problem), r_min, r_max, quad(opts))));
  });
}

// ---- solver ----

wsys_status wsys_solve(const wsys_measure* sigma, const wsys_measure* mu, const wsys_measure* nu,
                       const wsys_problem* problem, const double* radii, size_t count, const wsys_solver_opts* opts,
                       wsys_solution** out) {
  return guarded([&] {
    require(out && sigma, "null argument");
    const ws::SystemParams sp = system_params(problem);
    const int n = sigma->m.dimension();
    require(n == sp.base().n(), "problem and measure dimensions differ");
    ws::SolverOptions so;
    if (opts) {
      require(opts->tol > 0 && opts->max_iter > 0, "solver tol and max_iter must be positive");
      require(opts->divergence_factor > 1, "divergence_factor must exceed 1");
      so.tol = opts->tol;
      so.max_iter = opts->max_iter;
      so.divergence_factor = opts->divergence_factor;
      so.monotone_tol = opts->monotone_tol;
      so.max_halvings = opts->max_halvings;
      so.max_doublings = opts->max_doublings;
      so.override_capacity_check = opts->override_capacity_check != 0;
      so.quad = quad(&opts->quad);
    }
    const ws::Measure zero = ws::Measure::zero(n);
    auto* sol = new wsys_solution{ws::solve_system(sigma->m, mu ? mu->m : zero, nu ? nu->m : zero, sp,
                                                   span_of(radii, count), so),
                                  {}};
    const ws::SystemSolution& s = sol->s;
    const ws::GridFunction* fs[9] = {&s.u,          &s.v,          &s.u0,      &s.v0,     &s.envelope.u,
                                     &s.envelope.v, &s.w_sigma,    &s.w_mu,    &s.w_nu};
    for (int i = 0; i < 9; ++i) sol->curves[i].f = *fs[i];
    *out = sol;
    switch (s.report.termination) {
      case ws::Termination::converged: return WSYS_OK;
      case ws::Termination::diverged:
        return fail(WSYS_DIVERGED, "iteration left the supersolution envelope: " + s.report.note);
      case ws::Termination::max_iter:
        return fail(WSYS_MAX_ITER, "no convergence within " + std::to_string(s.report.iterations) + " iterations");
    }
    return WSYS_OK;
  });
}

const wsys_curve* wsys_solution_curve(const wsys_solution* s, wsys_curve_kind which) {
  if (!s || which < 0 || which > 8) return nullptr;
  return &s->curves[which];
}

wsys_solve_summary wsys_solution_summary(const wsys_solution* s) {
  wsys_solve_summary out{};
  if (!s) return out;
  const ws::SolveReport& r = s->s.report;
  out.iterations = r.iterations;
  out.converged = r.termination == ws::Termination::converged;
  out.diverged = r.termination == ws::Termination::diverged;
  out.monotonicity_violations = r.monotonicity_violations;
  out.worst_monotonicity = r.worst_monotonicity;
  out.lambda_sub = r.lambda_sub;
  out.lambda_super = r.lambda_super;
  out.c_lower = r.c_lower;
  out.c_upper = r.c_upper;
  out.c_sigma = r.c_sigma;
  return out;
}

size_t wsys_solution_residuals(const wsys_solution* s, const double** residual_u, const double** residual_v) {
  if (!s) return 0;
  if (residual_u) *residual_u = s->s.report.residual_u.data();
  if (residual_v) *residual_v = s->s.report.residual_v.data();
  return s->s.report.residual_u.size();
}

wsys_status wsys_solution_report_text(const wsys_solution* s, char** out) {
  return guarded([&] {
    require(s, "null solution");
    return copy_string(ws::serialize(s->s.report), out);
  });
}

void wsys_solution_free(wsys_solution* s) { delete s; }

// ---- estimates ----

wsys_status wsys_check_est1(const wsys_curve* u, const wsys_curve* v, const wsys_curve* w_sigma,
                            const wsys_problem* problem, int exploratory, wsys_estimate** out) {
  return guarded([&] {
    require(out && u && v && w_sigma, "null argument");
    return emit(out, ws::check_est1(u->f, v->f, w_sigma->f, system_params(problem), exploratory != 0));
  });
}

wsys_status wsys_check_est3(const wsys_curve* u, const wsys_curve* v, const wsys_curve* w_sigma,
                            const wsys_curve* w_mu, const wsys_curve* w_nu, const wsys_problem* problem,
                            int exploratory, wsys_estimate** out) {
  return guarded([&] {
    require(out && u && v && w_sigma && w_mu && w_nu, "null argument");
    return emit(out,
                ws::check_est3(u->f, v->f, w_sigma->f, w_mu->f, w_nu->f, system_params(problem), exploratory != 0));
  });
}

wsys_status wsys_check_est2(const wsys_measure* sigma, const wsys_problem* problem, const double* radii,
                            size_t count, const wsys_quad_opts* opts, int exploratory, wsys_estimate** out) {
  return guarded([&] {
    require(out && sigma, "null argument");
    return emit(out, ws::check_est2(sigma->m, system_params(problem), span_of(radii, count), quad(opts), exploratory != 0));
  });
}

wsys_status wsys_lemma_b(const wsys_measure* omega, double r, const wsys_problem* problem, const double* radii,
                         size_t count, const wsys_quad_opts* opts, wsys_estimate** out) {
  return guarded([&] {
    require(out && omega, "null argument");
    return emit(out, ws::lemma_b_kappa(omega->m, r, wolff(problem), span_of(radii, count), quad(opts)));
  });
}

wsys_status wsys_lemma_c(const wsys_measure* omega, const wsys_measure* mu, double r, const wsys_problem* problem,
                         const double* radii, size_t count, const wsys_quad_opts* opts, wsys_estimate** out) {
  return guarded([&] {
    require(out && omega && mu, "null argument");
    return emit(out, ws::lemma_c_check(omega->m, mu->m, r, wolff(problem), span_of(radii, count), quad(opts)));
  });
}

wsys_status wsys_lemma_d(const wsys_measure* sigma, double s, const wsys_problem* problem, const double* x,
                         const double* big_radii, size_t big_count, const double* radii, size_t count,
                         const wsys_quad_opts* opts, wsys_estimate** out) {
  return guarded([&] {
    require(out && sigma, "null argument");
    const ws::WolffParams wp = wolff(problem);
    return emit(out, ws::lemma_d_const(sigma->m, s, wp, span_of(x, static_cast<size_t>(wp.n())),
                                       span_of(big_radii, big_count), span_of(radii, count), quad(opts)));
  });
}

wsys_status wsys_capacity_proxy(const wsys_measure* sigma, const wsys_problem* problem, wsys_estimate** out) {
  return guarded([&] {
    require(out && sigma, "null argument");
    return emit(out, ws::capacity_proxy_check(sigma->m, wolff(problem)));
  });
}

const char* wsys_estimate_id(const wsys_estimate* e) { return e ? e->r.id.c_str() : ""; }
int wsys_estimate_pass(const wsys_estimate* e) { return e && e->r.pass; }
int wsys_estimate_exploratory(const wsys_estimate* e) { return e && e->r.exploratory; }
const char* wsys_estimate_note(const wsys_estimate* e) { return e ? e->r.note.c_str() : ""; }
size_t wsys_estimate_worst_node(const wsys_estimate* e) { return e ? e->r.worst_node : 0; }
double wsys_estimate_worst_radius(const wsys_estimate* e) { return e ? e->r.worst_radius : 0.0; }
size_t wsys_estimate_constant_count(const wsys_estimate* e) { return e ? e->r.constants.size() : 0; }

const char* wsys_estimate_constant_name(const wsys_estimate* e, size_t i) {
  if (!e || i >= e->r.constants.size()) return nullptr;
  return e->r.constants[i].first.c_str();
}

double wsys_estimate_constant_value(const wsys_estimate* e, size_t i) {
  if (!e || i >= e->r.constants.size()) return std::numeric_limits<double>::quiet_NaN();
  return e->r.constants[i].second;
}

wsys_status wsys_estimate_constant(const wsys_estimate* e, const char* name, double* out) {
  return guarded([&] {
    require(e && name && out, "null argument");
    if (!e->r.has_constant(name)) return fail(WSYS_INVALID_ARGUMENT, std::string("no constant named ") + name);
    *out = e->r.constant(name);
    return WSYS_OK;
  });
}

size_t wsys_estimate_size(const wsys_estimate* e) { return e ? e->r.radii.size() : 0; }
const double* wsys_estimate_radii(const wsys_estimate* e) { return e ? e->r.radii.data() : nullptr; }
const double* wsys_estimate_margins(const wsys_estimate* e) { return e ? e->r.margins.data() : nullptr; }

wsys_status wsys_estimate_to_text(const wsys_estimate* e, char** out) {
  return guarded([&] {
    require(e, "null estimate");
    return copy_string(ws::serialize(e->r), out);
  });
}

wsys_status wsys_estimate_from_text(const char* text, wsys_estimate** out) {
  return guarded([&] {
    require(text && out, "null argument");
    return emit(out, ws::parse_estimate_report(text));
  });
}

void wsys_estimate_free(wsys_estimate* e) { delete e; }

}  // extern "C"
