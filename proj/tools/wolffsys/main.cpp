// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

// wolffsys command-line driver. Reads a flat key=value config, runs one
// experiment through the C API and writes CSV tables plus a text report.

#include <CLI11.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "config.hpp"
#include "wolffsys/wolffsys.h"

namespace fs = std::filesystem;
using wolffsys_cli::Config;
using wolffsys_cli::ConfigError;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitNumerical = 2;

// Carries a library status out of nested helpers.
struct StatusError {
  wsys_status status;
  std::string message;
};

void check(wsys_status s) {
  if (s != WSYS_OK) throw StatusError{s, wsys_last_error()};
}

int exit_code(wsys_status s) {
  switch (s) {
    case WSYS_OK: return kExitOk;
    case WSYS_DOMAIN:
    case WSYS_INVALID_ARGUMENT:
    case WSYS_INFEASIBLE: return kExitDomain;
    default: return kExitNumerical;
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using MeasurePtr = std::unique_ptr<wsys_measure, Deleter<wsys_measure, wsys_measure_free>>;
using CurvePtr = std::unique_ptr<wsys_curve, Deleter<wsys_curve, wsys_curve_free>>;
using ProfilePtr = std::unique_ptr<wsys_profile, Deleter<wsys_profile, wsys_profile_free>>;
using SolutionPtr = std::unique_ptr<wsys_solution, Deleter<wsys_solution, wsys_solution_free>>;
using EstimatePtr = std::unique_ptr<wsys_estimate, Deleter<wsys_estimate, wsys_estimate_free>>;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string owned_text(wsys_status s, char*& text) {
  check(s);
  std::string out(text);
  wsys_string_free(text);
  return out;
}

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  bool override_capacity = false;
  long long seed = 0;
};

class Run {
 public:
  Run(std::string command, const Options& opts) : command_(std::move(command)), opts_(opts) {
    cfg_ = Config::load(opts.config_path);
    problem_.n = cfg_.integer("system.n");
    problem_.k = cfg_.integer("system.k", 0);
    problem_.alpha = cfg_.real("system.alpha", 0.0);
    problem_.p = cfg_.real("system.p", 0.0);
    problem_.q1 = cfg_.real("system.q1", 0.0);
    problem_.q2 = cfg_.real("system.q2", 0.0);
    if (problem_.k == 0 && !(cfg_.has("system.alpha") && cfg_.has("system.p")))
      throw ConfigError(opts.config_path + ": set system.k, or both system.alpha and system.p");
    check(wsys_problem_check(&problem_));
    quad_ = wsys_quad_opts_default();
    quad_.rel_tol = cfg_.real("quad.rel_tol", quad_.rel_tol);
    quad_.abs_tol = cfg_.real("quad.abs_tol", quad_.abs_tol);
    quad_.max_subdivisions = cfg_.integer("quad.max_subdivisions", quad_.max_subdivisions);
    quad_.t_min_fraction = cfg_.real("quad.t_min_fraction", quad_.t_min_fraction);
    radii_ = geometric(cfg_.real("grid.r_min", 1e-3), cfg_.real("grid.r_max", 1e3), cfg_.integer("grid.nodes", 200),
                       "grid");
    fs::create_directories(opts.out_dir);
  }

  const Config& cfg() const { return cfg_; }
  const wsys_problem& problem() const { return problem_; }
  const wsys_quad_opts& quad() const { return quad_; }
  const std::vector<double>& radii() const { return radii_; }

  std::vector<double> geometric(double lo, double hi, int n, const std::string& what) const {
    if (!(lo > 0) || !(hi > lo) || n < 2)
      throw ConfigError(opts_.config_path + ": " + what + " needs 0 < min < max and at least 2 nodes");
    std::vector<double> r(static_cast<size_t>(n));
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) r[static_cast<size_t>(i)] = lo * std::exp(step * i);
    r.front() = lo;
    r.back() = hi;
    return r;
  }

  bool has_measure(const std::string& name) const { return cfg_.has("measure." + name + ".kind"); }

  MeasurePtr measure(const std::string& name) const {
    const std::string pre = "measure." + name + ".";
    const std::string kind = cfg_.str(pre + "kind");
    const int n = problem_.n;
    wsys_measure* m = nullptr;
    if (kind == "zero") {
      check(wsys_measure_zero(n, &m));
    } else if (kind == "dirac") {
      std::vector<double> pos(static_cast<size_t>(n), 0.0);
      if (cfg_.has(pre + "position")) pos = cfg_.reals(pre + "position");
      if (pos.size() != static_cast<size_t>(n)) throw ConfigError(pre + "position must have system.n entries");
      const double mass = cfg_.real(pre + "mass", 1.0);
      check(wsys_measure_atomic(n, pos.data(), &mass, 1, &m));
    } else if (kind == "atomic") {
      const auto pos = cfg_.reals(pre + "positions");
      const auto masses = cfg_.reals(pre + "masses");
      if (pos.size() != masses.size() * static_cast<size_t>(n))
        throw ConfigError(pre + "positions must hold system.n coordinates per mass");
      check(wsys_measure_atomic(n, pos.data(), masses.data(), masses.size(), &m));
    } else if (kind == "uniform_ball") {
      check(wsys_measure_uniform_ball(n, cfg_.real(pre + "radius", 1.0), cfg_.real(pre + "density", 1.0), &m));
    } else if (kind == "bump") {
      check(wsys_measure_bump(n, cfg_.real(pre + "radius", 1.0), cfg_.real(pre + "amplitude", 1.0), &m));
    } else if (kind == "counterexample") {
      check(wsys_measure_counterexample(n, cfg_.real(pre + "q"), cfg_.real(pre + "beta"), &m));
    } else {
      throw ConfigError(opts_.config_path + ": " + pre + "kind: unknown measure kind '" + kind + "'");
    }
    MeasurePtr out(m);
    if (cfg_.has(pre + "scale")) {
      wsys_measure* scaled = nullptr;
      check(wsys_measure_scaled(cfg_.real(pre + "scale"), out.get(), &scaled));
      out.reset(scaled);
    }
    return out;
  }

  MeasurePtr measure_or_null(const std::string& name) const {
    return has_measure(name) ? measure(name) : MeasurePtr();
  }

  wsys_solver_opts solver_opts() const {
    wsys_solver_opts o = wsys_solver_opts_default();
    o.tol = cfg_.real("solver.tol", o.tol);
    o.max_iter = cfg_.integer("solver.max_iter", o.max_iter);
    o.divergence_factor = cfg_.real("solver.divergence_factor", o.divergence_factor);
    o.monotone_tol = cfg_.real("solver.monotone_tol", o.monotone_tol);
    o.override_capacity_check =
        (opts_.override_capacity || cfg_.flag("solver.override_capacity_check", false)) ? 1 : 0;
    o.quad = quad_;
    return o;
  }

  // Writes through a temporary file in the same directory, then renames.
  void write(const std::string& name, const std::string& content) const {
    const fs::path target = fs::path(opts_.out_dir) / name;
    const fs::path tmp = fs::path(opts_.out_dir) / ("." + name + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw ConfigError("cannot write " + tmp.string());
      out << content;
      out.flush();
      if (!out) throw ConfigError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
  }

  std::string header() const {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016" PRIx64, cfg_.hash());
    std::string h = "# wolffsys " + std::string(wsys_version()) + "\n";
    h += "# command=" + command_ + "\n";
    h += "# config=" + opts_.config_path + "\n";
    h += "# config_hash=fnv1a64:" + std::string(hash) + "\n";
    h += "# seed=" + std::to_string(opts_.seed) + "\n";
    h += "# override_capacity_check=" + std::string(opts_.override_capacity ? "1" : "0") + "\n";
    for (const auto& [k, v] : cfg_.values()) h += "# param." + k + "=" + v + "\n";
    return h;
  }

 private:
  std::string command_;
  Options opts_;
  Config cfg_;
  wsys_problem problem_{};
  wsys_quad_opts quad_{};
  std::vector<double> radii_;
};

std::string curve_csv(const wsys_curve* c) {
  std::string out = "r,value,is_infinite\n";
  const double* r = wsys_curve_radii(c);
  const double* v = wsys_curve_values(c);
  for (size_t i = 0; i < wsys_curve_size(c); ++i)
    out += num(r[i]) + "," + num(v[i]) + "," + (std::isinf(v[i]) ? "1" : "0") + "\n";
  return out;
}

std::string estimate_csv(const wsys_estimate* e) {
  std::string out = "r,margin\n";
  const double* r = wsys_estimate_radii(e);
  const double* m = wsys_estimate_margins(e);
  for (size_t i = 0; i < wsys_estimate_size(e); ++i) out += num(r[i]) + "," + num(m[i]) + "\n";
  return out;
}

std::string estimate_text(const wsys_estimate* e) {
  char* text = nullptr;
  return owned_text(wsys_estimate_to_text(e, &text), text);
}

int cmd_wolff(const Run& run) {
  const MeasurePtr sigma = run.measure("sigma");
  wsys_curve* c = nullptr;
  check(wsys_wolff_curve(sigma.get(), &run.problem(), run.radii().data(), run.radii().size(), &run.quad(), &c));
  const CurvePtr curve(c);
  size_t infinite = 0;
  const double* v = wsys_curve_values(c);
  for (size_t i = 0; i < wsys_curve_size(c); ++i) infinite += std::isinf(v[i]) ? 1 : 0;
  run.write("wolff.csv", curve_csv(c));
  run.write("wolff_report.txt", run.header() + "nodes=" + std::to_string(wsys_curve_size(c)) +
                                    "\ninfinite_nodes=" + std::to_string(infinite) + "\n");
  return kExitOk;
}

// Runs the solver and writes its tables; returns the solve status.
wsys_status run_solve(const Run& run, SolutionPtr& out) {
  const MeasurePtr sigma = run.measure("sigma");
  const MeasurePtr mu = run.measure_or_null("mu");
  const MeasurePtr nu = run.measure_or_null("nu");
  const wsys_solver_opts opts = run.solver_opts();
  wsys_solution* s = nullptr;
  const wsys_status st = wsys_solve(sigma.get(), mu.get(), nu.get(), &run.problem(), run.radii().data(),
                                    run.radii().size(), &opts, &s);
  if (!s) check(st);
  const std::string failure = st == WSYS_OK ? "" : wsys_last_error();
  out.reset(s);

  const wsys_curve_kind cols[] = {WSYS_CURVE_U,          WSYS_CURVE_V,  WSYS_CURVE_ENVELOPE_U,
                                      WSYS_CURVE_ENVELOPE_V, WSYS_CURVE_U0, WSYS_CURVE_V0};
  std::string csv = "r,u,v,U_envelope,V_envelope,u0,v0\n";
  const double* r = wsys_curve_radii(wsys_solution_curve(s, WSYS_CURVE_U));
  for (size_t i = 0; i < wsys_curve_size(wsys_solution_curve(s, WSYS_CURVE_U)); ++i) {
    csv += num(r[i]);
    for (auto c : cols) csv += "," + num(wsys_curve_values(wsys_solution_curve(s, c))[i]);
    csv += "\n";
  }
  run.write("solve.csv", csv);

  const double* ru = nullptr;
  const double* rv = nullptr;
  const size_t iters = wsys_solution_residuals(s, &ru, &rv);
  std::string res = "iteration,residual_u,residual_v\n";
  for (size_t i = 0; i < iters; ++i) res += std::to_string(i + 1) + "," + num(ru[i]) + "," + num(rv[i]) + "\n";
  run.write("residuals.csv", res);

  char* text = nullptr;
  std::string report = run.header() + owned_text(wsys_solution_report_text(s, &text), text);
  run.write("solve_report.txt", report);
  if (st != WSYS_OK) std::cerr << "wolffsys: " << failure << "\n";
  return st;
}

int cmd_solve(const Run& run) {
  SolutionPtr s;
  return exit_code(run_solve(run, s));
}

int cmd_dirichlet(const Run& run) {
  const MeasurePtr g = run.measure("sigma");
  const double R = run.cfg().real("dirichlet.R");
  wsys_profile* p = nullptr;
  check(wsys_dirichlet(g.get(), &run.problem(), R, run.radii().data(), run.radii().size(), &p));
  const ProfilePtr profile(p);
  std::string csv = "r,u,du,source_mass\n";
  for (size_t i = 0; i < wsys_profile_size(p); ++i)
    csv += num(wsys_profile_radii(p)[i]) + "," + num(wsys_profile_u(p)[i]) + "," + num(wsys_profile_du(p)[i]) + "," +
           num(wsys_profile_source_mass(p)[i]) + "\n";
  run.write("dirichlet.csv", csv);
  run.write("dirichlet_report.txt", run.header() + "boundary_radius=" + num(R) + "\nnodes=" +
                                        std::to_string(wsys_profile_size(p)) + "\nu_max=" +
                                        num(wsys_profile_size(p) ? wsys_profile_u(p)[0] : 0.0) + "\n");
  return kExitOk;
}

EstimatePtr verify_estimate(const Run& run, const std::string& mode, wsys_status& solve_status) {
  const wsys_problem& pr = run.problem();
  const auto& radii = run.radii();
  const bool exploratory = run.cfg().flag("verify.exploratory", false);
  wsys_estimate* e = nullptr;
  solve_status = WSYS_OK;
  if (mode == "est1" || mode == "est3") {
    SolutionPtr s;
    solve_status = run_solve(run, s);
    const wsys_curve* u = wsys_solution_curve(s.get(), WSYS_CURVE_U);
    const wsys_curve* v = wsys_solution_curve(s.get(), WSYS_CURVE_V);
    const wsys_curve* ws = wsys_solution_curve(s.get(), WSYS_CURVE_W_SIGMA);
    if (mode == "est1")
      check(wsys_check_est1(u, v, ws, &pr, exploratory, &e));
    else
      check(wsys_check_est3(u, v, ws, wsys_solution_curve(s.get(), WSYS_CURVE_W_MU),
                            wsys_solution_curve(s.get(), WSYS_CURVE_W_NU), &pr, exploratory, &e));
  } else if (mode == "est2") {
    const MeasurePtr sigma = run.measure("sigma");
    check(wsys_check_est2(sigma.get(), &pr, radii.data(), radii.size(), &run.quad(), exploratory, &e));
  } else if (mode == "lemA") {
    const MeasurePtr g = run.measure("sigma");
    wsys_profile* p = nullptr;
    check(wsys_dirichlet(g.get(), &pr, run.cfg().real("dirichlet.R"), radii.data(), radii.size(), &p));
    const ProfilePtr profile(p);
    check(wsys_lemma_a(p, &pr, run.cfg().real("lemma_a.r_min", 0.0), run.cfg().real("lemma_a.r_max", 0.0),
                       &run.quad(), &e));
  } else if (mode == "lemB" || mode == "lemC") {
    const MeasurePtr omega = run.measure(run.has_measure("omega") ? "omega" : "sigma");
    const double r = run.cfg().real("verify.r", 1.0);
    if (mode == "lemB") {
      check(wsys_lemma_b(omega.get(), r, &pr, radii.data(), radii.size(), &run.quad(), &e));
    } else {
      const MeasurePtr mu = run.measure("mu");
      check(wsys_lemma_c(omega.get(), mu.get(), r, &pr, radii.data(), radii.size(), &run.quad(), &e));
    }
  } else if (mode == "lemD") {
    const MeasurePtr sigma = run.measure("sigma");
    std::vector<double> x(static_cast<size_t>(pr.n), 0.0);
    if (run.cfg().has("verify.x")) x = run.cfg().reals("verify.x");
    if (x.size() != static_cast<size_t>(pr.n)) throw ConfigError("verify.x must have system.n entries");
    const auto big = run.geometric(run.cfg().real("verify.R_min", 1e-2), run.cfg().real("verify.R_max", 1.0),
                                   run.cfg().integer("verify.R_nodes", 21), "verify.R");
    check(wsys_lemma_d(sigma.get(), run.cfg().real("verify.s", 1.0), &pr, x.data(), big.data(), big.size(),
                       radii.data(), radii.size(), &run.quad(), &e));
  } else if (mode == "cap") {
    const MeasurePtr sigma = run.measure("sigma");
    check(wsys_capacity_proxy(sigma.get(), &pr, &e));
  } else {
    throw ConfigError("unknown verify mode '" + mode + "'");
  }
  return EstimatePtr(e);
}

int cmd_verify(const Run& run, const std::string& mode) {
  wsys_status solve_status = WSYS_OK;
  const EstimatePtr e = verify_estimate(run, mode, solve_status);
  run.write("verify_" + mode + ".csv", estimate_csv(e.get()));
  run.write("verify_" + mode + "_report.txt", run.header() + estimate_text(e.get()));
  std::cout << mode << ": " << (wsys_estimate_exploratory(e.get()) ? "exploratory" : wsys_estimate_pass(e.get()) ? "pass" : "fail");
  for (size_t i = 0; i < wsys_estimate_constant_count(e.get()); ++i)
    std::cout << " " << wsys_estimate_constant_name(e.get(), i) << "=" << num(wsys_estimate_constant_value(e.get(), i));
  std::cout << "\n";
  return exit_code(solve_status);
}

int cmd_preset(const Run& run, const std::string& name) {
  if (name != "counterexample") throw ConfigError("unknown preset '" + name + "'");
  const double q = run.cfg().real("measure.sigma.q", 0.5);
  const double beta = run.cfg().real("measure.sigma.beta", 1.5);
  wsys_measure* m = nullptr;
  check(wsys_measure_counterexample(run.problem().n, q, beta, &m));
  const MeasurePtr sigma(m);
  std::vector<double> origin(static_cast<size_t>(run.problem().n), 0.0);
  std::string csv = "r,ball_mass\n";
  for (double r : run.radii()) {
    double mass = 0.0;
    check(wsys_measure_ball_mass(m, origin.data(), r, &mass));
    csv += num(r) + "," + num(mass) + "\n";
  }
  run.write("preset_" + name + ".csv", csv);
  wsys_estimate* e = nullptr;
  check(wsys_capacity_proxy(m, &run.problem(), &e));
  const EstimatePtr cap(e);
  double total = 0.0;
  check(wsys_measure_total_mass(m, &total));
  const double s = (1.0 - q) * run.problem().n + 2.0 * q;
  run.write("preset_" + name + "_report.txt", run.header() + "preset=" + name + "\nq=" + num(q) + "\nbeta=" +
                                                  num(beta) + "\ns=" + num(s) + "\ntotal_mass=" + num(total) +
                                                  "\n" + estimate_text(e));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wolff potentials, Wolff integral systems and radial k-Hessian problems"};
  app.require_subcommand(1);
  Options opts;
  std::string mode;
  std::string preset;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    sub->add_flag("--override-capacity-check", opts.override_capacity, "solve even if the capacity proxy fails");
    sub->add_option("--seed", opts.seed, "seed recorded in the report header")->capture_default_str();
  };
  CLI::App* wolff = app.add_subcommand("wolff", "Wolff potential curve of measure.sigma");
  CLI::App* solve = app.add_subcommand("solve", "solve the Wolff integral system");
  CLI::App* dirichlet = app.add_subcommand("dirichlet", "radial k-Hessian Dirichlet problem with source measure.sigma");
  CLI::App* verify = app.add_subcommand("verify", "check an estimate or lemma on the grid");
  CLI::App* presetcmd = app.add_subcommand("preset", "tabulate a preset measure");
  for (CLI::App* sub : {wolff, solve, dirichlet, verify, presetcmd}) add_common(sub);
  verify->add_option("mode", mode, "est1|est2|est3|lemA|lemB|lemC|lemD|cap")
      ->required()
      ->check(CLI::IsMember({"est1", "est2", "est3", "lemA", "lemB", "lemC", "lemD", "cap"}));
  presetcmd->add_option("name", preset, "preset name")->required()->check(CLI::IsMember({"counterexample"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitDomain;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    const Run run(name == "verify" ? "verify " + mode : name == "preset" ? "preset " + preset : name, opts);
    if (chosen == wolff) return cmd_wolff(run);
    if (chosen == solve) return cmd_solve(run);
    if (chosen == dirichlet) return cmd_dirichlet(run);
    if (chosen == verify) return cmd_verify(run, mode);
    return cmd_preset(run, preset);
  } catch (const ConfigError& e) {
    std::cerr << "wolffsys: config error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const StatusError& e) {
    std::cerr << "wolffsys: " << wsys_status_string(e.status) << ": " << e.message << "\n";
    return exit_code(e.status);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "wolffsys: " << e.what() << "\n";
    return kExitDomain;
  }
}
