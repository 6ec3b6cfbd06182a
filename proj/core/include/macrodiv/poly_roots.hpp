// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace macrodiv {

/// Roots of sum_i coeffs[i] * x^i (coefficients ascending, real) via the
/// eigenvalues of the companion matrix of the monic, root-scaled polynomial.
/// Roots with |Im| < 1e-8 |Re| are snapped to the real axis; output is
/// sorted by (Re, Im). Requires degree >= 1 and a nonzero leading coefficient.
std::vector<std::complex<double>> poly_roots(std::span<const double> coeffs);

/// poly_roots followed by a few extended-precision Newton steps per root.
/// Wide spectra (root magnitude ratios of 1e12+ appear at high SNR) cost the
/// companion eigenvalues several digits on the small roots; polishing against
/// the coefficients restores full double accuracy for simple roots.
std::vector<std::complex<double>> poly_roots_refined(std::span<const double> coeffs);

}  // namespace macrodiv
