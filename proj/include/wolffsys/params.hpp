// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace wolffsys {

/// Order/exponent pair (alpha, p) of a Wolff potential in dimension n.
///
/// Valid objects satisfy n >= 3, alpha > 0, p > 1 and 0 < alpha*p < n.
class WolffParams {
 public:
  static WolffParams make(int n, double alpha, double p);

  int n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  double p() const noexcept { return p_; }

  /// n - alpha*p, the power of t in the Wolff integrand denominator.
  double riesz_exponent() const noexcept { return n_ - alpha_p_; }
  /// 1/(p-1).
  double inner_power() const noexcept { return 1.0 / (p_ - 1.0); }
  /// (n - alpha*p)/(p-1): decay rate of the potential of a compact measure.
  double tail_exponent() const noexcept { return riesz_exponent() / (p_ - 1.0); }

 private:
  friend class HessianParams;
  WolffParams(int n, double alpha, double p, double alpha_p)
      : n_(n), alpha_(alpha), p_(p), alpha_p_(alpha_p) {}

  int n_;
  double alpha_;
  double p_;
  double alpha_p_;  // alpha*p, exact (2k) in the Hessian case
};

/// Dimension and order of the k-Hessian operator, 1 <= k < n/2.
class HessianParams {
 public:
  static HessianParams make(int n, int k);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }

  /// The induced (n, 2k/(k+1), k+1) Wolff parameters.
  WolffParams wolff() const;

 private:
  HessianParams(int n, int k) : n_(n), k_(k) {}

  int n_;
  int k_;
};

struct Gammas {
  double gamma1;
  double gamma2;
};

/// Exponents of the sub-solution powers for growth exponents q1, q2 and
/// Wolff exponent p. Throws DomainError outside 0 < q_i < p-1 or when
/// (p-1)^2 - q1*q2 is within 1e-9 of zero.
Gammas gammas(double p, double q1, double q2);

/// Validated coupling data of the two-equation system.
class SystemParams {
 public:
  static SystemParams make(const WolffParams& base, double q1, double q2);
  static SystemParams make(const HessianParams& base, double q1, double q2);

  const WolffParams& base() const noexcept { return base_; }
  double q1() const noexcept { return q1_; }
  double q2() const noexcept { return q2_; }
  double gamma1() const noexcept { return gamma1_; }
  double gamma2() const noexcept { return gamma2_; }

  /// Same system with the roles of the two unknowns exchanged.
  SystemParams swapped() const { return make(base_, q2_, q1_); }

 private:
  SystemParams(WolffParams base, double q1, double q2, Gammas g)
      : base_(base), q1_(q1), q2_(q2), gamma1_(g.gamma1), gamma2_(g.gamma2) {}

  WolffParams base_;
  double q1_;
  double q2_;
  double gamma1_;
  double gamma2_;
};

}  // namespace wolffsys
