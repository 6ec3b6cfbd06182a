// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "macrodiv/mixture.hpp"
#include "macrodiv/power_profile.hpp"

namespace macrodiv {

/// Denominator polynomial of the approximate MMSE output-SINR CF:
/// sum_i coeffs[i] * (-jt)^i of degree n_r. The phi_hat table separates the
/// noise powers from the combinatorial content:
///
///   coeffs[i] = sum_k phi_hat(i, k) * sigma^2(n - i - k - 1)
///
/// with phi_hat(i, 0) the elementary symmetric functions of p1 and
/// phi_hat(i, k) = 0 for i > n_r - k. The table itself does not depend on
/// the noise variance, so the sigma^2 -> 0 collapse onto the ZF coefficients
/// can be read off its last column.
struct MmseDenominator {
  std::vector<double> coeffs;  // literal phi_i at noise_variance
  Eigen::MatrixXd phi_hat;     // (n_r + 1) x n table
  double noise_variance = 1.0;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }

  /// Coefficients of the noise-normalized variable noise * Z at a given
  /// sigma^2: b_i = sum_k phi_hat(i,k) * s2^(n-1-k). Only nonnegative powers
  /// appear, so s2 = 0 is fine and returns the ZF coefficient list padded
  /// with zeros.
  std::vector<double> unit_coeffs(double s2) const;
  std::vector<double> unit_coeffs() const { return unit_coeffs(noise_variance); }
};

/// E{|sigma^2 I + H2^H H2|}: the CF numerator, a permanent polynomial in
/// sigma^2 over interferer column subsets. At sigma^2 = 0 it is Perm(Q2).
double mmse_numerator(const UserView& view, double noise_variance);

MmseDenominator mmse_denominator_coeffs(const UserView& view, double noise_variance);

/// Approximate MMSE output-SINR law: a generalized mixture of n_r
/// exponentials (same construction core as the ZF analysis).
ExponentialMixture mmse_mixture(const UserView& view, double noise_variance);

/// Terms of the high-SNR constant K0(s) = c0 * sum_i chi_i / (theta_i + s):
/// zeta_i are column-subset permanents of P1^-1 Q2, -theta_i the roots of
/// sum zeta_i s^(n-i-1), and chi_i the partial-fraction residues scaled by
/// zeta_{n-1}. c0 equals the ZF constant, which K0(0) reproduces.
struct HighSnrK0 {
  double c0 = 0.0;
  std::vector<double> zetas;
  std::vector<std::complex<double>> thetas;
  std::vector<std::complex<double>> chis;

  double k0(double s) const;
};

/// Requires every desired-user power positive. For a single user (n = 1)
/// the constant has no s-dependence and the returned object carries only
/// c0 = 1 / |P1| with empty theta/chi lists.
HighSnrK0 mmse_k0_terms(const UserView& view);

}  // namespace macrodiv
