// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "macrodiv/errors.hpp"
#include "macrodiv/qcomplex.hpp"

namespace macrodiv {

struct MixtureTerm {
  std::complex<double> weight;  // eta_i, may be negative or complex
  std::complex<double> rate;    // omega_i, Re > 0
};

/// Generalized mixture of exponentials
///
///   f(z) = c * sum_i eta_i exp(-omega_i z),   z >= 0,
///
/// the approximate output SNR/SINR law produced by the ZF and MMSE analyses.
/// Weights may be negative, and non-real terms occur in conjugate pairs so
/// the density stays real. Construction enforces:
///   - Re(omega_i) > 0 for every term,
///   - conjugate-pair symmetry of the non-real terms,
///   - unit total mass: c * sum eta_i / omega_i = 1 within 1e-9.
///
/// Evaluations carry the weights and exponential sums in extended precision
/// (see qcomplex.hpp) and return the real part after checking that the
/// imaginary residual is negligible.
class ExponentialMixture {
 public:
  ExponentialMixture(double scale, std::vector<MixtureTerm> terms);

  /// Builds the mixture with residue weights eta_i = 1/prod_{k!=i}(w_k - w_i)
  /// computed from the rates in extended precision.
  static ExponentialMixture from_rates(double scale,
                                       std::span<const std::complex<double>> rates);

  double pdf(double z) const;
  double cdf(double z) const;

  /// Analytic mean, c * sum eta_i / omega_i^2.
  double mean() const;

  /// Moment generating function E{e^{sZ}} = c * sum eta_i / (omega_i - s);
  /// finite for s < min Re(omega_i). s = -inf maps to 0.
  double mgf(double s) const;

  /// Characteristic function E{e^{jtZ}} = c * sum eta_i / (omega_i - jt).
  std::complex<double> cf(double t) const;

  /// Smallest z with cdf(z) >= p, by bisection. Requires 0 < p < 1.
  double quantile(double p) const;

  double scale() const noexcept { return scale_; }
  const std::vector<MixtureTerm>& terms() const noexcept { return terms_; }
  int size() const noexcept { return static_cast<int>(terms_.size()); }

  /// True when some rates form conjugate pairs instead of being purely real.
  /// The density is still real; this exists so callers can surface the case.
  bool has_complex_terms() const noexcept { return has_complex_terms_; }

 private:
  ExponentialMixture() = default;
  void finish_setup();  // fills caches, validates invariants

  double scale_ = 0.0;
  std::vector<MixtureTerm> terms_;
  std::vector<detail::QComplex> qweights_;
  std::vector<detail::QComplex> qrates_;
  bool has_complex_terms_ = false;
};

/// Shared ZF/MMSE construction core. `unit_coeffs` are the denominator
/// coefficients of the noise-normalized variable (noise_variance * Z), i.e.
/// the CF denominator is sum_i unit_coeffs[i] * (-j t)^i with all
/// coefficients nonnegative. Rates are the polynomial roots rescaled by
/// noise_variance and the scale is unit_coeffs[0] / phi_top.
///
/// If any root pair sits closer than 1e-6 relative to its own magnitude, the
/// coefficients get one deterministic 1e-9 relative perturbation and the
/// roots are recomputed; a cluster that survives raises DegenerateRootsError.
ExponentialMixture mixture_from_denominator(std::span<const double> unit_coeffs,
                                            double noise_variance);

}  // namespace macrodiv
