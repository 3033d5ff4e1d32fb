// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include "wolffsys/params.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "wolffsys/error.hpp"

namespace wolffsys {

namespace {

constexpr double kDegenerateGap = 1e-9;

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "DomainError";
    case ErrorKind::quadrature_failure: return "QuadratureFailure";
    case ErrorKind::calibration_failure: return "CalibrationFailure";
    case ErrorKind::diverged: return "Diverged";
    case ErrorKind::max_iter: return "MaxIter";
    case ErrorKind::infeasible: return "Infeasible";
  }
  return "Error";
}

WolffParams WolffParams::make(int n, double alpha, double p) {
  if (n < 3) throw DomainError("dimension n must be >= 3, got " + std::to_string(n));
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("alpha must be positive, got " + fmt_double(alpha));
  if (!(p > 1.0) || !std::isfinite(p))
    throw DomainError("p must exceed 1, got " + fmt_double(p));
  if (!(alpha * p < n))
    throw DomainError("alpha*p must be below n (" + fmt_double(alpha * p) + " >= " +
                      std::to_string(n) + "); the Wolff integral diverges");
  return WolffParams(n, alpha, p, alpha * p);
}

HessianParams HessianParams::make(int n, int k) {
  if (n < 3) throw DomainError("dimension n must be >= 3, got " + std::to_string(n));
  if (k < 1) throw DomainError("Hessian order k must be >= 1, got " + std::to_string(k));
  if (n - 2 * k <= 0)
    throw DomainError("k-Hessian order requires k < n/2 (n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + "); the regime k >= n/2 is not covered");
  return HessianParams(n, k);
}

WolffParams HessianParams::wolff() const {
  return WolffParams(n_, 2.0 * k_ / (k_ + 1.0), k_ + 1.0, 2.0 * k_);
}

Gammas gammas(double p, double q1, double q2) {
  const double pm1 = p - 1.0;
  if (!(pm1 > 0.0)) throw DomainError("p must exceed 1, got " + fmt_double(p));
  if (!(q1 > 0.0 && q1 < pm1) || !(q2 > 0.0 && q2 < pm1))
    throw DomainError("growth exponents must satisfy 0 < q_i < p-1 (q1=" + fmt_double(q1) +
                      ", q2=" + fmt_double(q2) + ", p-1=" + fmt_double(pm1) + ")");
  const double gap = pm1 * pm1 - q1 * q2;
  if (gap < kDegenerateGap)
    throw DomainError("(p-1)^2 - q1*q2 = " + fmt_double(gap) +
                      " is at the critical boundary; exponents blow up");
  return {pm1 * (pm1 + q1) / gap, pm1 * (pm1 + q2) / gap};
}

SystemParams SystemParams::make(const WolffParams& base, double q1, double q2) {
  return SystemParams(base, q1, q2, gammas(base.p(), q1, q2));
}

SystemParams SystemParams::make(const HessianParams& base, double q1, double q2) {
  return make(base.wolff(), q1, q2);
}

}  // namespace wolffsys
