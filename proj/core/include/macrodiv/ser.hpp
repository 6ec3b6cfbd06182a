// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <string_view>

#include "macrodiv/mixture.hpp"
#include "macrodiv/mmse_analysis.hpp"
#include "macrodiv/power_profile.hpp"
#include "macrodiv/quadrature.hpp"

namespace macrodiv {

enum class ModKind { MPSK, MQAM };

/// Constellation parameters feeding the MGF-angle SER integrals:
/// g = sin^2(pi/M) and T = (M-1)pi/M for M-PSK; g = 1.5/(M-1) for square
/// M-QAM, whose SER is the standard two-integral combination over [0, pi/2]
/// and [0, pi/4].
struct ModulationSpec {
  ModKind kind = ModKind::MPSK;
  int m = 2;
  double g = 1.0;
  double t_upper = 0.0;

  static ModulationSpec mpsk(int m);
  static ModulationSpec mqam(int m);
  /// Accepts "bpsk", "qpsk", "<M>psk" and "<M>qam" (e.g. "16qam").
  static ModulationSpec parse(std::string_view name);

  std::string name() const;
};

/// Exact SER of the mixture law by the MGF approach: for M-PSK
/// (1/pi) Integral_0^T M(-g/sin^2) dtheta with the closed-form mixture MGF;
/// M-QAM combines the two partial integrals. Adaptive quadrature to
/// abs 1e-12 / rel 1e-10.
double ser_from_mixture(const ExponentialMixture& mix, const ModulationSpec& mod);

/// Conditional symbol error probability given a realized SINR/SNR value:
/// the same angle integrals with a point-mass MGF exp(-g x / sin^2 theta).
/// The Monte Carlo harness averages this over channel draws.
double conditional_sep(double statistic, const ModulationSpec& mod,
                       const QuadratureOptions& opt = {1e-9, 1e-9, 10000});

/// J_m(c, a) = (1/pi) Integral_0^c sin^(2m)t / (a + sin^2 t) dt for m >= 1,
/// 0 < c < pi, a >= 0, by quadrature.
double jm_integral(int m, double c, double a);

/// High-SNR SER line P ~ (Ga * snr)^-Gd: diversity order Gd = n_r - n + 1
/// and array gain Ga = (k0 * integral)^(-1/Gd).
struct HighSnrAsymptote {
  int diversity = 1;
  double array_gain = 0.0;
  double k0 = 0.0;       // the power-profile constant behind the line
  double integral = 0.0; // the modulation-dependent angle integral

  double ser(double snr_bar) const;
};

HighSnrAsymptote zf_high_snr(const UserView& view, const ModulationSpec& mod);

/// MMSE high-SNR line via K0(s) partial fractions and the J_(L+1) integral
/// family. Delegates to zf_high_snr when there are no interferers.
HighSnrAsymptote mmse_high_snr(const UserView& view, const ModulationSpec& mod);

}  // namespace macrodiv
