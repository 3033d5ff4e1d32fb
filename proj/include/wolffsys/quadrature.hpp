// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Globally adaptive Gauss-Kronrod integration (QUADPACK QAG strategy) with
// caller-supplied breakpoints.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace wolffsys::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  int intervals = 0;
  bool converged = true;
};

namespace detail {

struct Gk15 {
  static constexpr int kHalf = 7;
  static constexpr double xgk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wgk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  // Gauss weights for xgk[1], xgk[3], xgk[5] and the centre.
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
  static constexpr bool kGaussHasCentre = true;
};

struct Gk21 {
  static constexpr int kHalf = 10;
  static constexpr double xgk[11] = {
      0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
      0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
      0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
      0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
      0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
      0.000000000000000000000000000000000};
  static constexpr double wgk[11] = {
      0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
      0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
      0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
      0.123491976262065851077208067417013, 0.134709217311473325928054001771707,
      0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
      0.149445554002916905664936468389821};
  // Gauss weights for xgk[1], xgk[3], ..., xgk[9]; no centre node.
  static constexpr double wg[5] = {
      0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
      0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
      0.295524224714752870173892994651338};
  static constexpr bool kGaussHasCentre = false;
};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

// One Kronrod panel with the QUADPACK error heuristic.
template <class Rule, class F>
Segment panel(F& f, double a, double b) {
  constexpr double epmach = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  const double fc = f(centre);
  double resg = Rule::kGaussHasCentre ? fc * Rule::wg[3] : 0.0;
  double resk = fc * Rule::wgk[Rule::kHalf];
  double resabs = std::abs(resk);
  double fv1[Rule::kHalf];
  double fv2[Rule::kHalf];
  for (int j = 0; j < Rule::kHalf; ++j) {
    const double dx = half * Rule::xgk[j];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += Rule::wgk[j] * (f1 + f2);
    resabs += Rule::wgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += Rule::wg[j / 2] * (f1 + f2);
  }
  const double reskh = 0.5 * resk;
  double resasc = Rule::wgk[Rule::kHalf] * std::abs(fc - reskh);
  for (int j = 0; j < Rule::kHalf; ++j)
    resasc += Rule::wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double value = resk * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > uflow / (50.0 * epmach)) err = std::max(epmach * 50.0 * resabs, err);
  return {a, b, value, err};
}

template <class Rule, class F>
Result adaptive(F&& f, std::span<const double> points, double rel_tol, double abs_tol,
                int max_intervals) {
  Result out;
  if (points.size() < 2) return out;

  int evals = 0;
  auto counted = [&](double x) {
    ++evals;
    return f(x);
  };
  std::vector<Segment> heap;
  heap.reserve(static_cast<std::size_t>(max_intervals) + points.size());
  auto by_error = [](const Segment& l, const Segment& r) { return l.error < r.error; };

  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    Segment s = panel<Rule>(counted, points[i], points[i + 1]);
    if (!std::isfinite(s.value)) {
      out.value = s.value;
      out.error = 0.0;
      out.evaluations = evals;
      out.converged = !std::isnan(s.value);
      return out;
    }
    total += s.value;
    total_err += s.error;
    heap.push_back(s);
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  auto tolerance = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
  constexpr double epmach = std::numeric_limits<double>::epsilon();

  while (total_err > tolerance()) {
    if (static_cast<int>(heap.size()) >= max_intervals) break;
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    // Interval too small to split further in floating point.
    if (std::abs(worst.b - worst.a) <= 4.0 * epmach * std::max(std::abs(worst.a), std::abs(worst.b)) ||
        mid <= worst.a || mid >= worst.b) {
      heap.push_back(Segment{worst.a, worst.b, worst.value, 0.0});
      std::push_heap(heap.begin(), heap.end(), by_error);
      total_err -= worst.error;
      continue;
    }
    const Segment left = panel<Rule>(counted, worst.a, mid);
    const Segment right = panel<Rule>(counted, mid, worst.b);
    if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
      out.value = std::isnan(left.value) || std::isnan(right.value)
                      ? std::numeric_limits<double>::quiet_NaN()
                      : std::numeric_limits<double>::infinity();
      out.evaluations = evals;
      out.converged = !std::isnan(out.value);
      return out;
    }
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  // Re-sum to shed accumulated update roundoff.
  total = 0.0;
  total_err = 0.0;
  std::sort(heap.begin(), heap.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
  for (const auto& s : heap) {
    total += s.value;
    total_err += s.error;
  }
  out.value = total;
  out.error = total_err;
  out.evaluations = evals;
  out.intervals = static_cast<int>(heap.size());
  out.converged = total_err <= tolerance() * (1.0 + 1e-12);
  return out;
}

}  // namespace detail

/// Integrates f over [points.front(), points.back()], never placing a panel
/// across an interior point. Uses 21-point Kronrod panels.
template <class F>
Result integrate(F&& f, std::span<const double> points, double rel_tol, double abs_tol,
                 int max_intervals = 2000) {
  return detail::adaptive<detail::Gk21>(f, points, rel_tol, abs_tol, max_intervals);
}

/// As integrate() but with cheaper 15-point panels, for inner integrals.
template <class F>
Result integrate15(F&& f, std::span<const double> points, double rel_tol, double abs_tol,
                   int max_intervals = 2000) {
  return detail::adaptive<detail::Gk15>(f, points, rel_tol, abs_tol, max_intervals);
}

template <class F>
Result integrate15(F&& f, double a, double b, double rel_tol, double abs_tol,
                   int max_intervals = 2000) {
  const double pts[2] = {a, b};
  return integrate15(f, std::span<const double>(pts, 2), rel_tol, abs_tol, max_intervals);
}

}  // namespace wolffsys::quad
