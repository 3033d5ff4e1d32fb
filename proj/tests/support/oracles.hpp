// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations used by the tests. None of these call
// into the library.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(Matrix a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Sum of all k x k principal minors of a square matrix, by enumeration.
inline double principal_minor_sum(const Matrix& a, int k) {
  const int n = static_cast<int>(a.size());
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Matrix sub(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[i][j] = a[idx[i]][idx[j]];
    total += determinant(sub);
  }
  return total;
}

/// Random orthogonal matrix by Gram-Schmidt on Gaussian columns.
inline Matrix random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix q(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  for (int c = 0; c < n; ++c) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = g(rng);
    for (int p = 0; p < c; ++p) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += v[i] * q[i][p];
      for (int i = 0; i < n; ++i) v[i] -= dot * q[i][p];
    }
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n; ++i) q[i][c] = v[i] / nrm;
  }
  return q;
}

/// Q diag(d) Q^T.
inline Matrix conjugate_diagonal(const std::vector<double>& d, const Matrix& q) {
  const std::size_t n = d.size();
  Matrix a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) a[i][j] += q[i][l] * d[l] * q[j][l];
  return a;
}

struct McEstimate {
  double mean;
  double stderr_;
};

/// Monte-Carlo mass of B(x, t) for the radial density f supported in
/// B(0, r_hi), sampling uniformly in the bounding cube.
inline McEstimate mc_ball_mass(int n, const std::function<double(double)>& f, double r_hi,
                               const std::vector<double>& x, double t, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-r_hi, r_hi);
  const double volume = std::pow(2.0 * r_hi, n);
  double sum = 0.0, sum2 = 0.0;
  std::vector<double> y(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < samples; ++s) {
    double ry = 0.0, d = 0.0;
    for (int i = 0; i < n; ++i) {
      y[i] = u(rng);
      ry += y[i] * y[i];
      d += (y[i] - x[i]) * (y[i] - x[i]);
    }
    ry = std::sqrt(ry);
    const double w = (ry <= r_hi && d <= t * t) ? f(ry) * volume : 0.0;
    sum += w;
    sum2 += w * w;
  }
  const double m = sum / samples;
  const double var = sum2 / samples - m * m;
  return {m, std::sqrt(std::max(var, 0.0) / samples)};
}

/// Monte-Carlo fraction of the sphere {|y| = r} inside B(x, t), |x| = rho.
inline McEstimate mc_capfrac(int n, double rho, double r, double t, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::size_t hits = 0;
  std::vector<double> y(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < samples; ++s) {
    double nrm = 0.0;
    for (double& c : y) {
      c = g(rng);
      nrm += c * c;
    }
    nrm = std::sqrt(nrm);
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
      const double yi = r * y[i] / nrm - (i == 0 ? rho : 0.0);
      d += yi * yi;
    }
    hits += d <= t * t;
  }
  const double p = static_cast<double>(hits) / samples;
  return {p, std::sqrt(p * (1 - p) / samples)};
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline double surface_area(int n) { return 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0); }

}  // namespace oracle
