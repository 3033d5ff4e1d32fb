// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wolffsys {

/// Nonnegative function of the radius sampled on a strictly increasing grid.
///
/// Between nodes the function is interpolated piecewise linearly in
/// (log r, log value); an interval with a zero endpoint is interpolated
/// linearly in r, and an interval touching a +inf node evaluates to +inf.
/// Outside the grid it is extended by the power law through the two boundary
/// nodes. The outer exponent is clamped to [-tail_cap, 0] when tail_cap > 0
/// and to at most 0 otherwise.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(std::vector<double> radii, std::vector<double> values, double tail_cap = 0.0);

  std::size_t size() const noexcept { return radii_.size(); }
  bool empty() const noexcept { return radii_.empty(); }
  std::span<const double> radii() const noexcept { return radii_; }
  std::span<const double> values() const noexcept { return values_; }
  double radius(std::size_t i) const { return radii_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  bool is_infinite(std::size_t i) const;
  bool all_finite() const;
  double tail_cap() const noexcept { return tail_cap_; }

  double operator()(double r) const;
  /// (*this)(r)^q, evaluated in the log domain where possible.
  double pow_at(double r, double q) const;

  /// Nodewise value^q (q > 0), keeping the grid and tail cap.
  GridFunction pow(double q) const;
  GridFunction scaled(double c) const;
  double sup_norm() const;

 private:
  // Returns log of the value at r, or a sentinel via the flags.
  struct Eval {
    double log_value;
    bool zero;
    bool infinite;
    double linear;  // valid when the interval is interpolated linearly
    bool use_linear;
  };
  Eval locate(double r) const;

  std::vector<double> radii_;
  std::vector<double> values_;
  std::vector<double> log_radii_;
  std::vector<double> log_values_;
  double tail_cap_ = 0.0;
  double inner_slope_ = 0.0;
  double outer_slope_ = 0.0;
};

/// n nodes geometrically spaced on [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);

/// Inserts the geometric midpoint between every pair of adjacent nodes.
std::vector<double> refine_grid(std::span<const double> radii);

}  // namespace wolffsys
