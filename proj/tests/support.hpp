// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.
//
// Test-only oracles, independent of the library code paths they check.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include "macrodiv/power_profile.hpp"

namespace support {

// Rectangular permanent by direct enumeration of all one-to-one maps of rows
// into columns (transpose convention for tall matrices). Exponentially slow
// on purpose: it shares nothing with the Ryser/subset-expansion kernels.
inline double perm_injection_oracle(const Eigen::MatrixXd& a) {
  if (a.rows() > a.cols()) return perm_injection_oracle(a.transpose());
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (m == 0) return 1.0;
  std::vector<bool> used(static_cast<size_t>(n), false);
  double total = 0.0;
  const auto recurse = [&](auto&& self, int row, double prod) -> void {
    if (row == m) {
      total += prod;
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (used[static_cast<size_t>(c)]) continue;
      used[static_cast<size_t>(c)] = true;
      self(self, row + 1, prod * a(row, c));
      used[static_cast<size_t>(c)] = false;
    }
  };
  recurse(recurse, 0, 1.0);
  return total;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols,
                                     double lo = 0.05, double hi = 3.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  }
  return m;
}

inline macrodiv::PowerProfile random_profile(std::mt19937_64& rng, int n_r, int n,
                                             double lo = 0.05, double hi = 3.0) {
  return macrodiv::PowerProfile(random_matrix(rng, n_r, n, lo, hi));
}

// CN(0, variances) draw for determinant MC oracles.
inline Eigen::MatrixXcd gaussian_matrix(std::mt19937_64& rng, const Eigen::MatrixXd& var) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd x(var.rows(), var.cols());
  for (Eigen::Index i = 0; i < var.rows(); ++i) {
    for (Eigen::Index j = 0; j < var.cols(); ++j) {
      x(i, j) = std::sqrt(var(i, j) / 2.0) *
                std::complex<double>(normal(rng), normal(rng));
    }
  }
  return x;
}

// Erlang(shape, rate) CDF.
inline double erlang_cdf(int shape, double rate, double z) {
  if (z <= 0.0) return 0.0;
  double term = 1.0;
  double sum = 1.0;
  for (int i = 1; i < shape; ++i) {
    term *= rate * z / i;
    sum += term;
  }
  return 1.0 - std::exp(-rate * z) * sum;
}

// Hypoexponential CDF (sum of independent exponentials with distinct rates).
inline double hypoexp_cdf(std::span<const double> rates, double z) {
  if (z <= 0.0) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < rates.size(); ++i) {
    double w = 1.0;
    for (size_t k = 0; k < rates.size(); ++k) {
      if (k != i) w *= rates[k] / (rates[k] - rates[i]);
    }
    sum += w * std::exp(-rates[i] * z);
  }
  return 1.0 - sum;
}

// Rayleigh-fading BPSK SER with mean branch SNR gbar.
inline double bpsk_rayleigh_ser(double gbar) {
  return 0.5 * (1.0 - std::sqrt(gbar / (1.0 + gbar)));
}

struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};

inline MeanStderr mean_stderr(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace support
