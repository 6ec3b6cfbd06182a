// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <vector>

#include "macrodiv/mixture.hpp"
#include "macrodiv/power_profile.hpp"

namespace macrodiv {

/// Denominator polynomial of the approximate ZF output-SNR characteristic
/// function: sum_i coeffs[i] * (-jt)^i of degree L = n_r - n + 1. All
/// coefficients are nonnegative and coeffs[0] equals Perm(Q2), which is what
/// normalizes the CF to 1 at t = 0.
///
/// `unit_coeffs` drop the sigma^(-2i) noise weighting (the coefficients of
/// the variable noise_variance * Z); working in that normalization avoids
/// the 1/sigma^(2L) dynamic range at high SNR.
struct DenominatorPoly {
  std::vector<double> coeffs;
  std::vector<double> unit_coeffs;
  double noise_variance = 1.0;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

/// Coefficients of |D| Perm(D^-1 Q2), assembled from elementary symmetric
/// functions of desired-user powers on complementary row subsets times
/// square permanents of interferer rows.
DenominatorPoly zf_denominator_coeffs(const UserView& view, double noise_variance);

/// Approximate ZF output-SNR law: a generalized mixture of L = n_r - n + 1
/// exponentials with rates the (rescaled) roots of the denominator
/// polynomial and residue weights eta_i = 1/prod_{k != i}(w_k - w_i).
ExponentialMixture zf_mixture(const UserView& view, double noise_variance);

/// n_r = n special case: the mixture degenerates to a single exponential
/// with rate sigma^2 * theta, theta = Perm(Q2) / perm(P).
double zf_special_case_rate(const PowerProfile& profile, int user, double noise_variance);

/// High-SNR constant K0 = Perm(Q2) / (|P1| Perm(P1^-1 Q2)). Scale-invariant
/// in the interferer powers; doubles as a long-term-CSI scheduling metric
/// (smaller is better).
double zf_k0(const UserView& view);

}  // namespace macrodiv
