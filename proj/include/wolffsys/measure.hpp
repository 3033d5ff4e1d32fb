// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace wolffsys {

class GridFunction;

using Point = std::vector<double>;

struct Atom {
  Point position;
  double mass;
};

/// Surface area of the unit sphere S^{n-1}, 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);
double ball_volume(int n, double r);
double norm(std::span<const double> x);
double distance(std::span<const double> x, std::span<const double> y);

/// Fraction of the sphere {|y| = r} inside the closed ball B(x, t), |x| = rho.
double capfrac(int n, double rho, double r, double t);

/// Radially symmetric absolutely continuous measure f(|y|) dy with support
/// in the shell r_lo <= |y| <= r_hi.
///
/// The cumulative mass of centred balls is tabulated at construction so that
/// ball masses cost one short quadrature on the partial cell plus the
/// spherical-cap integral over the annulus the ball cuts.
class RadialDensity {
 public:
  struct Spec {
    std::function<double(double)> density;
    double r_lo = 0.0;
    double r_hi = 1.0;
    /// s > 0 declares a density blowing up like r^{-s} at the origin
    /// (requires r_lo == 0 and s < n).
    double singular_exponent = 0.0;
    /// Radii where the density is not smooth.
    std::vector<double> knots;
  };

  RadialDensity(int n, Spec spec);

  int dimension() const noexcept { return n_; }
  double r_lo() const noexcept { return spec_.r_lo; }
  double r_hi() const noexcept { return spec_.r_hi; }
  double singular_exponent() const noexcept { return spec_.singular_exponent; }
  const std::vector<double>& knots() const noexcept { return spec_.knots; }
  const std::function<double(double)>& density_fn() const noexcept { return spec_.density; }

  double density(double r) const;
  /// Mass of the centred closed ball B(0, R).
  double cumulative_mass(double R) const;
  double total_mass() const noexcept { return cumulative_.back(); }
  /// Mass of B(x, t) for any x with |x| = rho.
  double ball_mass(double rho, double t) const;

 private:
  double shell_mass(double a, double b) const;

  int n_;
  Spec spec_;
  double omega_;
  double core_radius_;    // below this radius mass follows a fitted power law
  double core_exponent_;  // mass of B(0,R) ~ R^{core_exponent_} for R < core_radius_
  std::vector<double> bounds_;
  std::vector<double> cumulative_;
};

/// Nonnegative Radon measure on R^n built from atoms and radial densities.
///
/// Values are immutable and cheap to copy; all queries are thread-safe.
class Measure {
 public:
  struct Geometry {
    bool atom_at_x = false;
    double total_mass = 0.0;
    /// Smallest t with mass(B(x,t)) possibly positive.
    double support_distance = 0.0;
    /// Smallest t with B(x,t) containing the whole support.
    double support_reach = 0.0;
    /// Radii t where t -> mass(B(x,t)) jumps or loses smoothness.
    std::vector<double> breakpoints;
  };

  static Measure zero(int n);
  static Measure atomic(int n, std::vector<Atom> atoms);
  static Measure dirac(Point at, double mass = 1.0);
  static Measure radial(int n, RadialDensity::Spec spec);
  /// density * Lebesgue on B(0, radius).
  static Measure uniform_ball(int n, double radius, double density);
  /// amplitude * (1 - |y|^2/radius^2)^2 on B(0, radius).
  static Measure bump(int n, double radius, double amplitude);
  static Measure sum(std::vector<Measure> parts);
  static Measure scaled(double c, const Measure& m);

  int dimension() const noexcept { return n_; }

  /// Mass of the closed ball B(x, t).
  double ball_mass(std::span<const double> x, double t) const;
  double total_mass() const;
  /// Summed radial density at radius r (atoms excluded).
  double density_at(double r) const;

  bool has_atoms() const;
  bool has_density() const;
  /// True when every atom sits at the origin.
  bool is_radial() const;
  /// Atoms with their accumulated scale factors, zero masses dropped.
  std::vector<Atom> atoms() const;
  Geometry geometry(std::span<const double> x) const;

  /// Pushes a weight w(|y|)^q into every component.
  Measure weighted(const GridFunction& w, double q) const;

 private:
  struct Node;
  Measure(int n, std::shared_ptr<const Node> node) : n_(n), node_(std::move(node)) {}

  int n_ = 0;
  std::shared_ptr<const Node> node_;
};

/// w(|y|)^q d sigma; q == 0 returns sigma unchanged.
Measure weighted_measure(const Measure& sigma, const GridFunction& w, double q);

/// |y|^{-s} log(1/|y|)^{-beta} on |y| < 1/2 with s = (1-q) n + 2q.
Measure preset_counterexample(int n, double q, double beta);

}  // namespace wolffsys
