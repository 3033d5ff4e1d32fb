// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include "wolffsys/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "wolffsys/error.hpp"
#include "wolffsys/grid_function.hpp"
#include "wolffsys/quadrature.hpp"

#include <boost/math/special_functions/beta.hpp>

namespace wolffsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kTableCells = 128;
constexpr double kCoreFraction = 1e-12;
constexpr double kCumulativeRelTol = 1e-13;
constexpr double kBallRelTol = 1e-11;
constexpr double kTiny = 1e-300;
constexpr double kMassFloor = 1e-14;
constexpr double kAtomDedup = 1e-14;

// Unnormalised cap integral int_0^theta sin^{n-2} for odd n, written in
// y = 1 - cos(theta) in [0, 1]: int_0^y (z (2 - z))^j dz with j = (n-3)/2.
double odd_cap_integral(int n, double y) {
  const int j = (n - 3) / 2;
  double sum = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= j; ++i) {
    const double term = binom * std::pow(2.0, j - i) * std::pow(y, j + i + 1) / (j + i + 1);
    sum += (i % 2 == 0) ? term : -term;
    binom = binom * (j - i) / (i + 1);
  }
  return sum;
}

struct SphereConstants {
  std::array<double, 64> area{};
  std::array<double, 64> odd_cap_norm{};
  SphereConstants() {
    for (int n = 1; n < 64; ++n) {
      area[n] = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
      // Half sphere: y = 1.
      if (n >= 3 && n % 2 == 1) odd_cap_norm[n] = 2.0 * odd_cap_integral(n, 1.0);
    }
  }
};

const SphereConstants& sphere_constants() {
  static const SphereConstants constants;
  return constants;
}

// Normalised area of the cap {cos(angle) >= 1 - y}, y in [0, 1].
double small_cap_fraction(int n, double y) {
  if (n % 2 == 1 && n >= 3) return odd_cap_integral(n, y) / sphere_constants().odd_cap_norm[n];
  // sin^2(theta/2) = y/2; the cap is a regularised incomplete beta.
  const double a = 0.5 * (n - 1);
  return boost::math::ibeta(a, a, 0.5 * y);
}

void check_dimension(int n) {
  if (n < 1 || n >= 64) throw DomainError("dimension out of supported range [1, 63]: " + std::to_string(n));
}

}  // namespace

double sphere_area(int n) {
  check_dimension(n);
  return sphere_constants().area[n];
}

double ball_volume(int n, double r) { return sphere_area(n) * std::pow(r, n) / n; }

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

static double cap_fraction(int n, double one_minus_c, double one_plus_c) {
  if (one_minus_c <= 0.0) return 0.0;
  if (one_plus_c <= 0.0) return 1.0;
  if (n == 1) return 0.0;
  if (n == 2) return std::acos(1.0 - one_minus_c) / std::numbers::pi;
  const double frac = one_minus_c <= 1.0 ? small_cap_fraction(n, one_minus_c)
                                         : 1.0 - small_cap_fraction(n, one_plus_c);
  return std::clamp(frac, 0.0, 1.0);
}

double capfrac(int n, double rho, double r, double t) {
  if (t < 0.0) return 0.0;
  if (rho == 0.0) return r <= t ? 1.0 : 0.0;
  if (r == 0.0) return rho <= t ? 1.0 : 0.0;
  // 1 -/+ cos(theta*) as products, free of cancellation.
  const double denom = 2.0 * rho * r;
  const double gap = std::abs(rho - r);
  const double one_minus_c = (t - gap) * (t + gap) / denom;
  const double one_plus_c = (rho + r - t) * (rho + r + t) / denom;
  return cap_fraction(n, one_minus_c, one_plus_c);
}

// --- RadialDensity ----------------------------------------------------------

namespace {

[[noreturn]] void annulus_failure(double rho, double t, const quad::Result& res) {
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "ball mass: annulus integral did not converge (|x|=%.6g, t=%.6g, value %.6g, error %.3g)", rho, t,
                res.value, res.error);
  throw QuadratureFailure(buf);
}

}  // namespace

RadialDensity::RadialDensity(int n, Spec spec) : n_(n), spec_(std::move(spec)) {
  check_dimension(n);
  omega_ = sphere_area(n);
  if (!spec_.density) throw DomainError("radial density: missing density function");
  if (!(spec_.r_lo >= 0.0) || !(spec_.r_hi > spec_.r_lo) || !std::isfinite(spec_.r_hi))
    throw DomainError("radial density: support must satisfy 0 <= r_lo < r_hi < inf");
  if (spec_.singular_exponent < 0.0 || spec_.singular_exponent >= n)
    throw DomainError("radial density: singular exponent must lie in [0, n)");
  if (spec_.singular_exponent > 0.0 && spec_.r_lo != 0.0)
    throw DomainError("radial density: a singular exponent requires support reaching the origin");

  double core_mass = 0.0;
  core_exponent_ = n;
  if (spec_.r_lo == 0.0) {
    core_radius_ = spec_.r_hi * kCoreFraction;
    const double h1 = density(core_radius_);
    const double h2 = density(2.0 * core_radius_);
    double s = 0.0;
    if (h1 > 0.0 && h2 > 0.0) s = std::log(h1 / h2) / std::log(2.0);
    if (s >= n) throw DomainError("radial density: not integrable at the origin");
    core_exponent_ = n - s;
    core_mass = h1 * omega_ * std::pow(core_radius_, n) / core_exponent_;
  } else {
    core_radius_ = spec_.r_lo;
  }
  if (!(core_mass >= 0.0) || !std::isfinite(core_mass))
    throw DomainError("radial density: density must be nonnegative and finite near the origin");

  // Cell bounds: log-spaced, refined at declared knots.
  const double la = std::log(core_radius_);
  const double lb = std::log(spec_.r_hi);
  bounds_.reserve(kTableCells + 1 + spec_.knots.size());
  for (int i = 0; i <= kTableCells; ++i) bounds_.push_back(std::exp(la + (lb - la) * i / kTableCells));
  bounds_.front() = core_radius_;
  bounds_.back() = spec_.r_hi;
  for (double k : spec_.knots)
    if (k > core_radius_ && k < spec_.r_hi) bounds_.push_back(k);
  std::sort(bounds_.begin(), bounds_.end());
  bounds_.erase(std::unique(bounds_.begin(), bounds_.end()), bounds_.end());

  cumulative_.resize(bounds_.size());
  cumulative_[0] = core_mass;
  for (std::size_t i = 0; i + 1 < bounds_.size(); ++i)
    cumulative_[i + 1] = cumulative_[i] + shell_mass(bounds_[i], bounds_[i + 1]);
  if (!std::isfinite(cumulative_.back()))
    throw DomainError("radial density: total mass is not finite");
}

double RadialDensity::density(double r) const {
  if (r < spec_.r_lo || r > spec_.r_hi) return 0.0;
  const double h = spec_.density(r);
  if (h < 0.0) throw DomainError("radial density: negative density value");
  return h;
}

double RadialDensity::shell_mass(double a, double b) const {
  if (!(b > a)) return 0.0;
  const int n = n_;
  auto f = [&](double u) {
    const double r = std::exp(u);
    return density(r) * std::pow(r, n);
  };
  const auto res = quad::integrate15(f, std::log(a), std::log(b), kCumulativeRelTol, kTiny);
  if (!res.converged) throw QuadratureFailure("radial density: shell mass did not converge");
  return omega_ * res.value;
}

double RadialDensity::cumulative_mass(double R) const {
  if (!(R > 0.0)) return 0.0;
  if (R >= spec_.r_hi) return cumulative_.back();
  if (R <= core_radius_) {
    if (spec_.r_lo > 0.0) return 0.0;
    return cumulative_.front() * std::pow(R / core_radius_, core_exponent_);
  }
  const auto it = std::upper_bound(bounds_.begin(), bounds_.end(), R);
  const std::size_t i = static_cast<std::size_t>(it - bounds_.begin()) - 1;
  return cumulative_[i] + shell_mass(bounds_[i], R);
}

double RadialDensity::ball_mass(double rho, double t) const {
  if (!(t >= 0.0)) return 0.0;
  if (rho == 0.0) return cumulative_mass(t);
  const double full = t > rho ? cumulative_mass(t - rho) : 0.0;
  const double a = std::max(std::abs(rho - t), spec_.r_lo);
  const double b = std::min(rho + t, spec_.r_hi);
  if (!(a < b)) return full;

  const int n = n_;
  double partial = 0.0;
  if (spec_.r_lo == 0.0 && spec_.singular_exponent > 0.0 && a < 1e-3 * b) {
    // Near-singular annulus: integrate in log r.
    const double a_eff = std::max(a, core_radius_);
    auto f = [&](double u) {
      const double r = std::exp(u);
      return density(r) * std::pow(r, n) * capfrac(n, rho, r, t);
    };
    std::vector<double> pts{std::log(a_eff)};
    for (double k : spec_.knots)
      if (k > a_eff && k < b) pts.push_back(std::log(k));
    pts.push_back(std::log(b));
    std::sort(pts.begin(), pts.end());
    const auto res = quad::integrate15(f, pts, kBallRelTol, kTiny);
    if (!res.converged) annulus_failure(rho, t, res);
    partial = omega_ * res.value;
    if (a < core_radius_)
      partial += (cumulative_mass(core_radius_) - cumulative_mass(a)) * capfrac(n, rho, core_radius_, t);
  } else {
    // r = big + small * w on w in [-1, 1], which keeps 1 -/+ cos(theta*)
    // accurate when the ball is tiny or huge compared with |x|.
    const double big = std::max(rho, t);
    const double small = std::min(rho, t);
    const bool thin = t <= rho;
    const double w_lo = std::max(-1.0, (a - big) / small);
    const double w_hi = std::min(1.0, (b - big) / small);
    auto f = [&](double w) {
      const double r = big + small * w;
      double one_minus_c;
      double one_plus_c;
      if (thin) {
        one_minus_c = t * t * (1.0 - w) * (1.0 + w) / (2.0 * rho * r);
        one_plus_c = (2.0 * (rho - t) + t * (1.0 + w)) * (rho + r + t) / (2.0 * rho * r);
      } else {
        one_minus_c = (1.0 - w) * (2.0 * t - rho * (1.0 - w)) / (2.0 * r);
        one_plus_c = (1.0 + w) * (2.0 * t + rho * (1.0 + w)) / (2.0 * r);
      }
      return density(r) * std::pow(r, n - 1) * cap_fraction(n, one_minus_c, one_plus_c);
    };
    std::vector<double> pts{w_lo};
    for (double k : spec_.knots)
      if (k > a && k < b) pts.push_back((k - big) / small);
    pts.push_back(w_hi);
    std::sort(pts.begin(), pts.end());
    // Absolute floor: a tiny fraction of the mass the ball would carry at the
    // mean density, below which r = big + small * w cannot resolve the edge.
    const double mean_density = cumulative_.back() / ball_volume(n, spec_.r_hi);
    const double floor = std::max(kTiny, kMassFloor * mean_density * ball_volume(n, t) / (omega_ * small));
    const auto res = quad::integrate15(f, pts, kBallRelTol, floor);
    if (!res.converged) annulus_failure(rho, t, res);
    partial = omega_ * small * res.value;
  }
  return full + partial;
}

// --- Measure ----------------------------------------------------------------

struct Measure::Node {
  enum class Kind { atomic, radial, sum, scaled };
  Kind kind = Kind::atomic;
  std::vector<Atom> atoms;
  std::shared_ptr<const RadialDensity> radial;
  std::vector<Measure> children;
  double scale = 1.0;
};

Measure Measure::zero(int n) { return atomic(n, {}); }

Measure Measure::atomic(int n, std::vector<Atom> atoms) {
  check_dimension(n);
  for (const auto& a : atoms) {
    if (static_cast<int>(a.position.size()) != n)
      throw DomainError("atom position has wrong dimension");
    if (!(a.mass >= 0.0)) throw DomainError("atom masses must be nonnegative");
  }
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::atomic;
  node->atoms = std::move(atoms);
  return Measure(n, std::move(node));
}

Measure Measure::dirac(Point at, double mass) {
  const int n = static_cast<int>(at.size());
  return atomic(n, {Atom{std::move(at), mass}});
}

Measure Measure::radial(int n, RadialDensity::Spec spec) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::radial;
  node->radial = std::make_shared<const RadialDensity>(n, std::move(spec));
  return Measure(n, std::move(node));
}

Measure Measure::uniform_ball(int n, double radius, double density) {
  if (!(radius > 0.0)) throw DomainError("uniform ball: radius must be positive");
  if (!(density >= 0.0)) throw DomainError("uniform ball: density must be nonnegative");
  RadialDensity::Spec spec;
  spec.density = [density](double) { return density; };
  spec.r_lo = 0.0;
  spec.r_hi = radius;
  return radial(n, std::move(spec));
}

Measure Measure::bump(int n, double radius, double amplitude) {
  if (!(radius > 0.0)) throw DomainError("bump: radius must be positive");
  if (!(amplitude >= 0.0)) throw DomainError("bump: amplitude must be nonnegative");
  RadialDensity::Spec spec;
  spec.density = [radius, amplitude](double r) {
    const double x = r / radius;
    const double w = 1.0 - x * x;
    return w > 0.0 ? amplitude * w * w : 0.0;
  };
  spec.r_lo = 0.0;
  spec.r_hi = radius;
  return radial(n, std::move(spec));
}

Measure Measure::sum(std::vector<Measure> parts) {
  if (parts.empty()) throw DomainError("sum of measures needs at least one part");
  const int n = parts.front().n_;
  for (const auto& p : parts)
    if (p.n_ != n) throw DomainError("sum of measures in different dimensions");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::sum;
  node->children = std::move(parts);
  return Measure(n, std::move(node));
}

Measure Measure::scaled(double c, const Measure& m) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("scale factor must be nonnegative and finite");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::scaled;
  node->scale = c;
  node->children = {m};
  return Measure(m.n_, std::move(node));
}

double Measure::ball_mass(std::span<const double> x, double t) const {
  if (static_cast<int>(x.size()) != n_) throw DomainError("ball_mass: point has wrong dimension");
  if (!(t >= 0.0)) return 0.0;
  const Node& node = *node_;
  switch (node.kind) {
    case Node::Kind::atomic: {
      double m = 0.0;
      for (const auto& a : node.atoms)
        if (distance(a.position, x) <= t) m += a.mass;
      return m;
    }
    case Node::Kind::radial:
      return node.radial->ball_mass(norm(x), t);
    case Node::Kind::sum: {
      double m = 0.0;
      for (const auto& c : node.children) m += c.ball_mass(x, t);
      return m;
    }
    case Node::Kind::scaled:
      return node.scale == 0.0 ? 0.0 : node.scale * node.children.front().ball_mass(x, t);
  }
  return 0.0;
}

double Measure::total_mass() const {
  const Node& node = *node_;
  switch (node.kind) {
    case Node::Kind::atomic: {
      double m = 0.0;
      for (const auto& a : node.atoms) m += a.mass;
      return m;
    }
    case Node::Kind::radial:
      return node.radial->total_mass();
    case Node::Kind::sum: {
      double m = 0.0;
      for (const auto& c : node.children) m += c.total_mass();
      return m;
    }
    case Node::Kind::scaled:
      return node.scale == 0.0 ? 0.0 : node.scale * node.children.front().total_mass();
  }
  return 0.0;
}

double Measure::density_at(double r) const {
  const Node& node = *node_;
  switch (node.kind) {
    case Node::Kind::atomic: return 0.0;
    case Node::Kind::radial: return node.radial->density(r);
    case Node::Kind::sum: {
      double d = 0.0;
      for (const auto& c : node.children) d += c.density_at(r);
      return d;
    }
    case Node::Kind::scaled:
      return node.scale == 0.0 ? 0.0 : node.scale * node.children.front().density_at(r);
  }
  return 0.0;
}

bool Measure::has_atoms() const { return !atoms().empty(); }

bool Measure::has_density() const {
  const Node& node = *node_;
  switch (node.kind) {
    case Node::Kind::atomic: return false;
    case Node::Kind::radial: return node.radial->total_mass() > 0.0;
    case Node::Kind::sum:
      return std::any_of(node.children.begin(), node.children.end(),
                         [](const Measure& c) { return c.has_density(); });
    case Node::Kind::scaled: return node.scale > 0.0 && node.children.front().has_density();
  }
  return false;
}

bool Measure::is_radial() const {
  for (const auto& a : atoms())
    if (norm(a.position) != 0.0) return false;
  return true;
}

std::vector<Atom> Measure::atoms() const {
  std::vector<Atom> out;
  std::function<void(const Measure&, double)> walk = [&](const Measure& m, double scale) {
    const Node& node = *m.node_;
    switch (node.kind) {
      case Node::Kind::atomic:
        for (const auto& a : node.atoms)
          if (a.mass * scale > 0.0) out.push_back(Atom{a.position, a.mass * scale});
        break;
      case Node::Kind::radial: break;
      case Node::Kind::sum:
        for (const auto& c : node.children) walk(c, scale);
        break;
      case Node::Kind::scaled:
        if (node.scale > 0.0) walk(node.children.front(), scale * node.scale);
        break;
    }
  };
  walk(*this, 1.0);
  return out;
}

Measure::Geometry Measure::geometry(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw DomainError("geometry: point has wrong dimension");
  Geometry g;
  g.support_distance = kInf;
  g.support_reach = 0.0;
  const double rho = norm(x);
  const double dedup = kAtomDedup * std::max(1.0, rho);

  std::function<void(const Measure&, double)> walk = [&](const Measure& m, double scale) {
    const Node& node = *m.node_;
    switch (node.kind) {
      case Node::Kind::atomic:
        for (const auto& a : node.atoms) {
          const double mass = a.mass * scale;
          if (!(mass > 0.0)) continue;
          const double d = distance(a.position, x);
          if (d <= dedup) g.atom_at_x = true;
          g.total_mass += mass;
          g.support_distance = std::min(g.support_distance, d);
          g.support_reach = std::max(g.support_reach, d);
          g.breakpoints.push_back(d);
        }
        break;
      case Node::Kind::radial: {
        const RadialDensity& rd = *node.radial;
        const double mass = rd.total_mass() * scale;
        if (!(mass > 0.0)) break;
        g.total_mass += mass;
        const double lo = rd.r_lo();
        const double hi = rd.r_hi();
        double dist = 0.0;
        if (rho < lo) dist = lo - rho;
        else if (rho > hi) dist = rho - hi;
        g.support_distance = std::min(g.support_distance, dist);
        g.support_reach = std::max(g.support_reach, rho + hi);
        for (double b : {std::abs(rho - lo), std::abs(rho - hi), rho + lo, rho + hi})
          if (b > 0.0) g.breakpoints.push_back(b);
        break;
      }
      case Node::Kind::sum:
        for (const auto& c : node.children) walk(c, scale);
        break;
      case Node::Kind::scaled:
        if (node.scale > 0.0) walk(node.children.front(), scale * node.scale);
        break;
    }
  };
  walk(*this, 1.0);

  if (!std::isfinite(g.support_distance)) g.support_distance = 0.0;
  std::sort(g.breakpoints.begin(), g.breakpoints.end());
  std::vector<double> unique;
  for (double b : g.breakpoints)
    if (unique.empty() || b - unique.back() > kAtomDedup * std::max(1.0, b)) unique.push_back(b);
  g.breakpoints = std::move(unique);
  return g;
}

Measure Measure::weighted(const GridFunction& w, double q) const {
  const Node& node = *node_;
  switch (node.kind) {
    case Node::Kind::atomic: {
      std::vector<Atom> atoms;
      atoms.reserve(node.atoms.size());
      for (const auto& a : node.atoms) {
        const double m = a.mass * w.pow_at(norm(a.position), q);
        if (m > 0.0 || std::isnan(m)) atoms.push_back(Atom{a.position, m});
      }
      return atomic(n_, std::move(atoms));
    }
    case Node::Kind::radial: {
      const RadialDensity& rd = *node.radial;
      RadialDensity::Spec spec;
      auto weight = std::make_shared<const GridFunction>(w);
      spec.density = [base = rd.density_fn(), weight, q](double r) { return base(r) * weight->pow_at(r, q); };
      spec.r_lo = rd.r_lo();
      spec.r_hi = rd.r_hi();
      spec.singular_exponent = rd.singular_exponent();
      spec.knots = rd.knots();
      for (double r : w.radii())
        if (r > rd.r_lo() && r < rd.r_hi()) spec.knots.push_back(r);
      return radial(n_, std::move(spec));
    }
    case Node::Kind::sum: {
      std::vector<Measure> parts;
      parts.reserve(node.children.size());
      for (const auto& c : node.children) parts.push_back(c.weighted(w, q));
      return sum(std::move(parts));
    }
    case Node::Kind::scaled:
      return scaled(node.scale, node.children.front().weighted(w, q));
  }
  return *this;
}

Measure weighted_measure(const Measure& sigma, const GridFunction& w, double q) {
  if (!(q >= 0.0)) throw DomainError("weighted measure: exponent must be nonnegative");
  if (q == 0.0) return sigma;
  return sigma.weighted(w, q);
}

Measure preset_counterexample(int n, double q, double beta) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("counterexample preset: q must lie in (0, 1)");
  if (!(beta > 1.0)) throw DomainError("counterexample preset: beta must exceed 1");
  const double s = (1.0 - q) * n + 2.0 * q;
  RadialDensity::Spec spec;
  spec.density = [s, beta](double r) {
    if (!(r > 0.0) || r >= 0.5) return 0.0;
    return std::pow(r, -s) * std::pow(std::log(1.0 / r), -beta);
  };
  spec.r_lo = 0.0;
  spec.r_hi = 0.5;
  spec.singular_exponent = s;
  return Measure::radial(n, std::move(spec));
}

}  // namespace wolffsys
