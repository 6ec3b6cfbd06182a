// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include "macrodiv/ser.hpp"

#include <cmath>
#include <numbers>

#include "macrodiv/zf_analysis.hpp"

namespace macrodiv {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_square(int m, int& root) {
  root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
  return root * root == m;
}

// (1/pi) Integral_0^c sin^(2m) / (a + sin^2) for complex a with Re(a) >= 0;
// the conjugate theta pairs of the MMSE asymptote need this off the real axis.
std::complex<double> jm_integral_complex(int m, double c, std::complex<double> a) {
  const auto integrand = [&](double theta, bool imag_part) {
    const double s2 = std::sin(theta) * std::sin(theta);
    const std::complex<double> v = std::pow(s2, m) / (a + s2);
    return imag_part ? v.imag() : v.real();
  };
  const double re = integrate([&](double t) { return integrand(t, false); }, 0.0, c);
  if (a.imag() == 0.0) return {re / kPi, 0.0};
  const double im = integrate([&](double t) { return integrand(t, true); }, 0.0, c);
  return {re / kPi, im / kPi};
}

// Angle-integral assembly shared by SER evaluation paths: integrates
// kernel(g / sin^2 theta) over the modulation's angle ranges with the QAM
// two-term combination when needed.
double angle_integral(const ModulationSpec& mod,
                      const std::function<double(double)>& kernel,
                      const QuadratureOptions& opt) {
  const auto integrand = [&](double theta) {
    const double s2 = std::sin(theta) * std::sin(theta);
    return kernel(mod.g / s2);
  };
  if (mod.kind == ModKind::MPSK) {
    return integrate(integrand, 0.0, mod.t_upper, opt) / kPi;
  }
  const double root = std::sqrt(static_cast<double>(mod.m));
  const double c1 = 4.0 * (1.0 - 1.0 / root);
  const double i1 = integrate(integrand, 0.0, kPi / 2.0, opt) / kPi;
  const double i2 = integrate(integrand, 0.0, kPi / 4.0, opt) / kPi;
  return c1 * i1 - c1 * (1.0 - 1.0 / root) * i2;
}

}  // namespace

ModulationSpec ModulationSpec::mpsk(int m) {
  if (m < 2) throw std::invalid_argument("ModulationSpec: M-PSK needs M >= 2");
  ModulationSpec spec;
  spec.kind = ModKind::MPSK;
  spec.m = m;
  spec.g = std::pow(std::sin(kPi / m), 2);
  spec.t_upper = (m - 1) * kPi / m;
  return spec;
}

ModulationSpec ModulationSpec::mqam(int m) {
  int root = 0;
  if (m < 4 || !is_square(m, root)) {
    throw std::invalid_argument("ModulationSpec: M-QAM needs square M >= 4");
  }
  ModulationSpec spec;
  spec.kind = ModKind::MQAM;
  spec.m = m;
  spec.g = 1.5 / (m - 1);
  spec.t_upper = kPi / 2.0;
  return spec;
}

ModulationSpec ModulationSpec::parse(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "bpsk") return mpsk(2);
  if (lower == "qpsk") return mpsk(4);
  const auto suffix_at = lower.size() > 3 ? lower.size() - 3 : 0;
  const std::string suffix = lower.substr(suffix_at);
  const std::string digits = lower.substr(0, suffix_at);
  if (!digits.empty() && (suffix == "psk" || suffix == "qam")) {
    int m = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') m = -1;
      if (m >= 0) m = m * 10 + (c - '0');
    }
    if (m > 0) return suffix == "psk" ? mpsk(m) : mqam(m);
  }
  throw FormatError("ModulationSpec: unknown modulation '" + std::string(name) + "'");
}

std::string ModulationSpec::name() const {
  if (kind == ModKind::MPSK && m == 2) return "bpsk";
  if (kind == ModKind::MPSK && m == 4) return "qpsk";
  return std::to_string(m) + (kind == ModKind::MPSK ? "psk" : "qam");
}

double ser_from_mixture(const ExponentialMixture& mix, const ModulationSpec& mod) {
  return angle_integral(mod, [&](double x) { return mix.mgf(-x); }, QuadratureOptions{});
}

double conditional_sep(double statistic, const ModulationSpec& mod,
                       const QuadratureOptions& opt) {
  if (!(statistic >= 0.0)) {
    throw std::invalid_argument("conditional_sep: statistic must be >= 0");
  }
  return angle_integral(mod, [&](double x) { return std::exp(-x * statistic); }, opt);
}

double jm_integral(int m, double c, double a) {
  if (m < 1) throw std::domain_error("jm_integral: needs m >= 1");
  if (!(c > 0.0 && c < kPi)) throw std::domain_error("jm_integral: needs 0 < c < pi");
  if (!(a >= 0.0)) throw std::domain_error("jm_integral: needs a >= 0");
  if (a == 0.0) {
    // The a = 0 limit is just sin^(2m-2); dividing would hit 0/0 at the origin.
    return integrate([&](double t) { return std::pow(std::sin(t) * std::sin(t), m - 1); },
                     0.0, c) /
           kPi;
  }
  return jm_integral_complex(m, c, {a, 0.0}).real();
}

double HighSnrAsymptote::ser(double snr_bar) const {
  return std::pow(array_gain * snr_bar, -static_cast<double>(diversity));
}

namespace {

// (1/pi) Integral (sin^2/g)^L over the modulation's angle combination: the
// high-SNR limit of the mixture MGF tail under the same integrals.
double asymptote_integral(const ModulationSpec& mod, int big_l) {
  const auto kernel = [&](double theta) {
    return std::pow(std::sin(theta) * std::sin(theta) / mod.g, big_l);
  };
  if (mod.kind == ModKind::MPSK) {
    return integrate(kernel, 0.0, mod.t_upper) / kPi;
  }
  const double root = std::sqrt(static_cast<double>(mod.m));
  const double c1 = 4.0 * (1.0 - 1.0 / root);
  const double i1 = integrate(kernel, 0.0, kPi / 2.0) / kPi;
  const double i2 = integrate(kernel, 0.0, kPi / 4.0) / kPi;
  return c1 * i1 - c1 * (1.0 - 1.0 / root) * i2;
}

HighSnrAsymptote assemble(int big_l, double k0, double integral) {
  HighSnrAsymptote out;
  out.diversity = big_l;
  out.k0 = k0;
  out.integral = integral;
  out.array_gain = std::pow(k0 * integral, -1.0 / big_l);
  if (!(out.array_gain > 0.0) || !std::isfinite(out.array_gain)) {
    throw NumericalError("high-SNR asymptote: array gain not positive/finite");
  }
  return out;
}

}  // namespace

HighSnrAsymptote zf_high_snr(const UserView& view, const ModulationSpec& mod) {
  const int big_l = view.n_r() - view.n() + 1;
  if (big_l < 1) throw DimensionError("zf_high_snr: needs n_r >= n");
  return assemble(big_l, zf_k0(view), asymptote_integral(mod, big_l));
}

HighSnrAsymptote mmse_high_snr(const UserView& view, const ModulationSpec& mod) {
  if (view.n() == 1) return zf_high_snr(view, mod);
  const int big_l = view.n_r() - view.n() + 1;
  if (big_l < 1) throw DimensionError("mmse_high_snr: needs n_r >= n");
  const HighSnrK0 terms = mmse_k0_terms(view);

  // I(P) = (1/g^L) sum_i (chi_i/theta_i) J_(L+1)(c, g/theta_i), assembled
  // over the modulation's angle combination; conjugate pairs cancel the
  // imaginary parts.
  const auto sum_jm = [&](double c) {
    std::complex<double> sum = 0.0;
    for (size_t i = 0; i < terms.thetas.size(); ++i) {
      sum += terms.chis[i] / terms.thetas[i] *
             jm_integral_complex(big_l + 1, c, mod.g / terms.thetas[i]);
    }
    if (std::abs(sum.imag()) > 1e-9 * std::abs(sum.real()) + 1e-15) {
      throw NumericalError("mmse_high_snr: imaginary residual in I(P)");
    }
    return sum.real();
  };

  double integral = 0.0;
  if (mod.kind == ModKind::MPSK) {
    integral = sum_jm(mod.t_upper);
  } else {
    const double root = std::sqrt(static_cast<double>(mod.m));
    const double c1 = 4.0 * (1.0 - 1.0 / root);
    integral = c1 * sum_jm(kPi / 2.0) - c1 * (1.0 - 1.0 / root) * sum_jm(kPi / 4.0);
  }
  integral /= std::pow(mod.g, big_l);
  return assemble(big_l, terms.c0, integral);
}

}  // namespace macrodiv
