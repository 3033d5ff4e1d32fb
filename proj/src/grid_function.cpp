// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include "wolffsys/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wolffsys/error.hpp"

namespace wolffsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool usable(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

GridFunction::GridFunction(std::vector<double> radii, std::vector<double> values, double tail_cap)
    : radii_(std::move(radii)), values_(std::move(values)), tail_cap_(tail_cap) {
  if (radii_.size() != values_.size())
    throw DomainError("grid function: radii and values differ in length");
  if (radii_.empty()) throw DomainError("grid function: empty grid");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i]))
      throw DomainError("grid function: radii must be positive and finite");
    if (i > 0 && !(radii_[i] > radii_[i - 1]))
      throw DomainError("grid function: radii must be strictly increasing");
    if (!(values_[i] >= 0.0)) throw DomainError("grid function: values must be nonnegative");
  }
  log_radii_.resize(radii_.size());
  log_values_.resize(values_.size());
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    log_radii_[i] = std::log(radii_[i]);
    log_values_[i] = usable(values_[i]) ? std::log(values_[i]) : 0.0;
  }
  const std::size_t m = radii_.size();
  if (m >= 2) {
    if (usable(values_[0]) && usable(values_[1]))
      inner_slope_ = (log_values_[1] - log_values_[0]) / (log_radii_[1] - log_radii_[0]);
    if (usable(values_[m - 1]) && usable(values_[m - 2]))
      outer_slope_ = (log_values_[m - 1] - log_values_[m - 2]) / (log_radii_[m - 1] - log_radii_[m - 2]);
  }
  outer_slope_ = std::min(outer_slope_, 0.0);
  if (tail_cap_ > 0.0) outer_slope_ = std::max(outer_slope_, -tail_cap_);
}

bool GridFunction::is_infinite(std::size_t i) const { return std::isinf(values_[i]); }

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridFunction::Eval GridFunction::locate(double r) const {
  Eval e{0.0, false, false, 0.0, false};
  if (!(r > 0.0)) {
    // The origin: a power law with negative inner slope blows up there.
    if (inner_slope_ < 0.0 && values_.front() > 0.0) { e.infinite = true; return e; }
    r = std::numeric_limits<double>::min();
  }
  const double lr = std::log(r);
  if (r <= radii_.front()) {
    const double v = values_.front();
    if (std::isinf(v)) { e.infinite = true; return e; }
    if (v == 0.0) { e.zero = true; return e; }
    if (r == radii_.front()) { e.log_value = log_values_.front(); return e; }
    e.log_value = log_values_.front() + inner_slope_ * (lr - log_radii_.front());
    return e;
  }
  if (r >= radii_.back()) {
    const double v = values_.back();
    if (std::isinf(v)) { e.infinite = true; return e; }
    if (v == 0.0) { e.zero = true; return e; }
    e.log_value = log_values_.back() + outer_slope_ * (lr - log_radii_.back());
    return e;
  }
  const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
  const std::size_t hi = static_cast<std::size_t>(it - radii_.begin());
  const std::size_t lo = hi - 1;
  const double v0 = values_[lo];
  const double v1 = values_[hi];
  if (std::isinf(v0) || std::isinf(v1)) { e.infinite = true; return e; }
  if (r == radii_[lo]) {
    if (v0 == 0.0) e.zero = true;
    else e.log_value = log_values_[lo];
    return e;
  }
  if (v0 == 0.0 && v1 == 0.0) { e.zero = true; return e; }
  if (v0 == 0.0 || v1 == 0.0) {
    const double w = (r - radii_[lo]) / (radii_[hi] - radii_[lo]);
    e.use_linear = true;
    e.linear = v0 + w * (v1 - v0);
    return e;
  }
  const double w = (lr - log_radii_[lo]) / (log_radii_[hi] - log_radii_[lo]);
  e.log_value = log_values_[lo] + w * (log_values_[hi] - log_values_[lo]);
  return e;
}

double GridFunction::operator()(double r) const {
  const Eval e = locate(r);
  if (e.infinite) return kInf;
  if (e.zero) return 0.0;
  if (e.use_linear) return e.linear;
  return std::exp(e.log_value);
}

double GridFunction::pow_at(double r, double q) const {
  if (q == 0.0) return 1.0;
  const Eval e = locate(r);
  if (e.infinite) return kInf;
  if (e.zero) return 0.0;
  if (e.use_linear) return std::pow(e.linear, q);
  return std::exp(q * e.log_value);
}

GridFunction GridFunction::pow(double q) const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(values_[i], q);
  return GridFunction(radii_, std::move(v), tail_cap_ > 0.0 ? tail_cap_ * q : 0.0);
}

GridFunction GridFunction::scaled(double c) const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * values_[i];
  return GridFunction(radii_, std::move(v), tail_cap_);
}

double GridFunction::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, v);
  return s;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw DomainError("geometric grid needs 0 < lo < hi and n >= 2");
  std::vector<double> r(n);
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) r[i] = std::exp(llo + step * static_cast<double>(i));
  r.front() = lo;
  r.back() = hi;
  return r;
}

std::vector<double> refine_grid(std::span<const double> radii) {
  std::vector<double> out;
  if (radii.empty()) return out;
  out.reserve(2 * radii.size() - 1);
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    out.push_back(radii[i]);
    out.push_back(std::sqrt(radii[i] * radii[i + 1]));
  }
  out.push_back(radii.back());
  return out;
}

}  // namespace wolffsys
