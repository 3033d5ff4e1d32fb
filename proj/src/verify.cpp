// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include "wolffsys/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "wolffsys/error.hpp"

namespace wolffsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kFamilyRadii = 41;

void require_same_grid(const GridFunction& a, const GridFunction& b, const char* what) {
  if (a.size() != b.size() || !std::equal(a.radii().begin(), a.radii().end(), b.radii().begin()))
    throw DomainError(std::string(what) + ": curves must share one grid");
}

void require_radial(const Measure& m, const char* what) {
  if (!m.is_radial()) throw DomainError(std::string(what) + ": measure must be radial");
}

std::string node_text(const EstimateReport& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst node %zu at r=%.6g", r.worst_node, r.worst_radius);
  return buf;
}

void mark_worst(EstimateReport& r, bool larger_is_worse) {
  if (r.margins.empty()) return;
  std::size_t worst = 0;
  for (std::size_t i = 1; i < r.margins.size(); ++i) {
    const double a = r.margins[i];
    const double b = r.margins[worst];
    if (std::isnan(a)) continue;
    if (std::isnan(b) || (larger_is_worse ? a > b : a < b)) worst = i;
  }
  r.worst_node = worst;
  r.worst_radius = r.radii[worst];
}

// Shared body of est1/est3: upper bound is extra + W + W^g.
EstimateReport sandwich(const char* id, const GridFunction& u, const GridFunction& v, const GridFunction& w,
                        const GridFunction* extra, const SystemParams& sp, bool exploratory) {
  require_same_grid(u, w, id);
  require_same_grid(v, w, id);
  if (extra) require_same_grid(*extra, w, id);

  EstimateReport r;
  r.id = id;
  r.exploratory = exploratory;
  double c_lower = 0.0;
  double c_upper = 0.0;
  const GridFunction* unknowns[2] = {&u, &v};
  const double g[2] = {sp.gamma1(), sp.gamma2()};
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double wi = w.value(i);
    if (!std::isfinite(wi)) continue;
    double node = 0.0;
    for (int j = 0; j < 2; ++j) {
      const double x = unknowns[j]->value(i);
      const double lower = std::pow(wi, g[j]);
      const double upper = (extra ? extra->value(i) : 0.0) + wi + lower;
      double need_lower = 0.0;
      if (lower > 0.0) need_lower = x > 0.0 ? lower / x : kInf;
      double need_upper = 0.0;
      if (x > 0.0) need_upper = upper > 0.0 ? x / upper : kInf;
      if (!std::isfinite(x)) need_upper = kInf;
      c_lower = std::max(c_lower, need_lower);
      c_upper = std::max(c_upper, need_upper);
      node = std::max({node, need_lower, need_upper});
    }
    r.radii.push_back(w.radius(i));
    r.margins.push_back(node);
  }
  mark_worst(r, true);
  const double c = std::max({1.0, c_lower, c_upper});
  r.set_constant("c", c);
  r.set_constant("c_lower", c_lower);
  r.set_constant("c_upper", c_upper);
  r.pass = std::isfinite(c);
  if (!r.pass) {
    r.note = "no finite constant; " + node_text(r);
    if (!exploratory) throw Infeasible(std::string(id) + ": " + r.note);
  }
  return r;
}

}  // namespace

void EstimateReport::set_constant(const std::string& name, double value) {
  for (auto& [k, v] : constants) {
    if (k == name) {
      v = value;
      return;
    }
  }
  constants.emplace_back(name, value);
}

double EstimateReport::constant(std::string_view name) const {
  for (const auto& [k, v] : constants)
    if (k == name) return v;
  throw DomainError("estimate report: no constant named " + std::string(name));
}

bool EstimateReport::has_constant(std::string_view name) const {
  return std::any_of(constants.begin(), constants.end(), [&](const auto& kv) { return kv.first == name; });
}

EstimateReport check_est1(const GridFunction& u, const GridFunction& v, const GridFunction& w_sigma,
                          const SystemParams& sp, bool exploratory) {
  return sandwich("est1", u, v, w_sigma, nullptr, sp, exploratory);
}

EstimateReport check_est1(const GridFunction& u, const GridFunction& v, const Measure& sigma,
                          const SystemParams& sp, const QuadOpts& opts) {
  const GridFunction w = wolff_curve(sigma, sp.base(), u.radii(), opts);
  return check_est1(u, v, w, sp);
}

EstimateReport check_est3(const GridFunction& u, const GridFunction& v, const GridFunction& w_sigma,
                          const GridFunction& w_mu, const GridFunction& w_nu, const SystemParams& sp,
                          bool exploratory) {
  require_same_grid(w_mu, w_nu, "est3");
  std::vector<double> extra(w_mu.size());
  for (std::size_t i = 0; i < extra.size(); ++i) extra[i] = w_mu.value(i) + w_nu.value(i);
  const GridFunction sum(std::vector<double>(w_mu.radii().begin(), w_mu.radii().end()), std::move(extra));
  return sandwich("est3", u, v, w_sigma, &sum, sp, exploratory);
}

EstimateReport check_est2(const Measure& sigma, const SystemParams& sp, std::span<const double> radii,
                          const QuadOpts& opts, bool exploratory) {
  require_radial(sigma, "est2");
  const WolffParams& wp = sp.base();
  EstimateReport r;
  r.id = "est2";
  r.exploratory = exploratory;
  if (!(sigma.total_mass() > 0.0)) {
    r.radii.assign(radii.begin(), radii.end());
    r.margins.assign(radii.size(), 0.0);
    r.set_constant("lambda", 1.0);
    r.pass = true;
    r.note = "zero measure; vacuous";
    return r;
  }

  const GridFunction w = wolff_curve(sigma, wp, radii, opts);
  const double g1 = sp.gamma1();
  const double g2 = sp.gamma2();
  const GridFunction a1 = wolff_curve(weighted_measure(sigma, w, sp.q1() * g2), wp, radii, opts);
  const GridFunction a2 = wolff_curve(weighted_measure(sigma, w, sp.q2() * g1), wp, radii, opts);

  double lambda = 0.0;
  std::size_t infinite_rhs = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double wi = w.value(i);
    if (!std::isfinite(wi)) {
      ++infinite_rhs;
      continue;
    }
    const double rhs1 = wi + std::pow(wi, g1);
    const double rhs2 = wi + std::pow(wi, g2);
    auto need = [](double lhs, double rhs) {
      if (!(lhs > 0.0)) return 0.0;
      return rhs > 0.0 ? lhs / rhs : kInf;
    };
    const double node = std::max(need(a1.value(i), rhs1), need(a2.value(i), rhs2));
    lambda = std::max(lambda, node);
    r.radii.push_back(w.radius(i));
    r.margins.push_back(node);
  }
  mark_worst(r, true);
  r.set_constant("lambda", lambda);
  r.set_constant("infinite_nodes", static_cast<double>(infinite_rhs));
  r.pass = std::isfinite(lambda) && infinite_rhs == 0 && !r.margins.empty();
  if (!r.pass) {
    r.note = infinite_rhs > 0 ? "W sigma is infinite on some nodes" : "no finite lambda; " + node_text(r);
    if (!exploratory) throw Infeasible("est2: " + r.note);
  } else {
    r.note = node_text(r);
  }
  return r;
}

EstimateReport lemma_b_kappa(const Measure& omega, double r, const WolffParams& wp, std::span<const double> radii,
                             const QuadOpts& opts) {
  if (!(r > 0.0)) throw DomainError("lemma B: exponent r must be positive");
  require_radial(omega, "lemma B");
  EstimateReport rep;
  rep.id = "lemB";
  const GridFunction w = wolff_curve(omega, wp, radii, opts);
  const GridFunction left = wolff_curve(weighted_measure(omega, w, r), wp, radii, opts);
  const double e = r / (wp.p() - 1.0);

  double kappa = kInf;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double wi = w.value(i);
    const double li = left.value(i);
    if (!std::isfinite(wi) || !std::isfinite(li) || !(wi > 0.0)) continue;
    const double k = std::pow(li / std::pow(wi, e + 1.0), 1.0 / e);
    kappa = std::min(kappa, k);
    rep.radii.push_back(w.radius(i));
    rep.margins.push_back(k);
  }
  if (rep.margins.empty()) {
    rep.set_constant("kappa", 0.0);
    rep.pass = false;
    rep.note = "no node with both sides finite and positive";
    return rep;
  }
  mark_worst(rep, false);
  rep.set_constant("kappa", kappa);
  rep.pass = kappa > 0.0;
  rep.note = node_text(rep);
  return rep;
}

EstimateReport lemma_c_check(const Measure& omega, const Measure& mu, double r, const WolffParams& wp,
                             std::span<const double> radii, const QuadOpts& opts, double tol) {
  if (!(r > 0.0)) throw DomainError("lemma C: exponent r must be positive");
  require_radial(omega, "lemma C");
  require_radial(mu, "lemma C");
  EstimateReport rep;
  rep.id = "lemC";
  const GridFunction w = wolff_curve(omega, wp, radii, opts);
  const Measure inner = weighted_measure(omega, w, r);
  const GridFunction base = wolff_curve(inner, wp, radii, opts);
  const GridFunction grown = wolff_curve(Measure::sum({inner, mu}), wp, radii, opts);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double b = base.value(i);
    const double g = grown.value(i);
    if (std::isinf(g)) {
      rep.radii.push_back(base.radius(i));
      rep.margins.push_back(kInf);
      continue;
    }
    const double diff = g - b;
    if (diff < -tol * std::max(std::abs(g), std::abs(b))) ++violations;
    rep.radii.push_back(base.radius(i));
    rep.margins.push_back(diff);
  }
  mark_worst(rep, false);
  rep.set_constant("violations", static_cast<double>(violations));
  rep.pass = violations == 0;
  rep.note = node_text(rep);
  return rep;
}

EstimateReport lemma_d_const(const Measure& sigma, double s, const WolffParams& wp, std::span<const double> x,
                             std::span<const double> big_radii, std::span<const double> radii,
                             const QuadOpts& opts) {
  if (!(s > 0.0)) throw DomainError("lemma D: exponent s must be positive");
  require_radial(sigma, "lemma D");
  if (static_cast<int>(x.size()) != wp.n()) throw DomainError("lemma D: centre has the wrong dimension");
  EstimateReport rep;
  rep.id = "lemD";
  const bool empty = !(sigma.total_mass() > 0.0);
  const Measure weighted =
      empty ? sigma : weighted_measure(sigma, wolff_curve(sigma, wp, radii, opts), s);
  double sup = 0.0;
  for (double R : big_radii) {
    if (!(R > 0.0)) throw DomainError("lemma D: radii must be positive");
    const double left = empty ? 0.0 : weighted.ball_mass(x, R);
    const double right = sigma.ball_mass(x, 2.0 * R) + sigma.ball_mass(x, R);
    double ratio = 0.0;
    if (right > 0.0) {
      ratio = left / right;
    } else if (left > 0.0) {
      throw DomainError("lemma D: right side vanishes while the left side is positive");
    }
    sup = std::max(sup, ratio);
    rep.radii.push_back(R);
    rep.margins.push_back(ratio);
  }
  mark_worst(rep, true);
  rep.set_constant("c", sup);
  rep.pass = std::isfinite(sup);
  rep.note = empty ? "zero measure; ratio 0" : node_text(rep);
  return rep;
}

BallFamily default_ball_family(const Measure& sigma) {
  const int n = sigma.dimension();
  BallFamily f;
  const Point origin(static_cast<std::size_t>(n), 0.0);
  f.centers.push_back(origin);
  for (const auto& a : sigma.atoms())
    if (norm(a.position) > 0.0) f.centers.push_back(a.position);
  double scale = sigma.geometry(origin).support_reach;
  if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;
  f.radii = geometric_grid(1e-2 * scale, scale, kFamilyRadii);
  return f;
}

EstimateReport capacity_proxy_check(const Measure& sigma, const WolffParams& wp, const BallFamily& family) {
  if (family.centers.empty() || family.radii.empty()) throw DomainError("capacity proxy: empty ball family");
  EstimateReport rep;
  rep.id = "cap";
  const double D = wp.riesz_exponent();
  const bool atoms = sigma.has_atoms();
  double best = 0.0;
  for (double r : family.radii) {
    if (!(r > 0.0)) throw DomainError("capacity proxy: radii must be positive");
    double node = 0.0;
    for (const auto& c : family.centers) node = std::max(node, sigma.ball_mass(c, r) / std::pow(r, D));
    best = std::max(best, node);
    rep.radii.push_back(r);
    rep.margins.push_back(node);
  }
  mark_worst(rep, true);
  rep.set_constant("C_sigma", atoms ? kInf : best);
  rep.set_constant("family_max", best);
  rep.pass = !atoms;
  rep.note = atoms ? "point masses violate the ball proxy as r -> 0" : node_text(rep);
  return rep;
}

EstimateReport capacity_proxy_check(const Measure& sigma, const WolffParams& wp) {
  return capacity_proxy_check(sigma, wp, default_ball_family(sigma));
}

}  // namespace wolffsys
