// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include "macrodiv/mixture.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "macrodiv/poly_roots.hpp"
#include "macrodiv/rng.hpp"

namespace macrodiv {

namespace detail {

QComplex qexp(QComplex z) {
  const __float128 m = expq(z.re);
  return {m * cosq(z.im), m * sinq(z.im)};
}

namespace {

double to_d(__float128 x) { return static_cast<double>(x); }

// Checks that an extended-precision sum is essentially real and returns
// its real part.
double take_real(QComplex v, const char* where) {
  const double re = to_d(v.re);
  const double im = to_d(v.im);
  if (!(std::abs(im) < 1e-9 * std::abs(re) + 1e-15)) {
    throw NumericalError(std::string(where) +
                         ": imaginary residual too large (re=" + std::to_string(re) +
                         ", im=" + std::to_string(im) + ")");
  }
  return re;
}

}  // namespace
}  // namespace detail

ExponentialMixture::ExponentialMixture(double scale, std::vector<MixtureTerm> terms)
    : scale_(scale), terms_(std::move(terms)) {
  qweights_.reserve(terms_.size());
  qrates_.reserve(terms_.size());
  for (const MixtureTerm& t : terms_) {
    qweights_.emplace_back(t.weight);
    qrates_.emplace_back(t.rate);
  }
  finish_setup();
}

ExponentialMixture ExponentialMixture::from_rates(
    double scale, std::span<const std::complex<double>> rates) {
  ExponentialMixture mix;
  mix.scale_ = scale;
  const size_t n = rates.size();
  mix.qrates_.reserve(n);
  for (const auto& r : rates) mix.qrates_.emplace_back(r);
  mix.qweights_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    detail::QComplex prod{1, 0};
    for (size_t k = 0; k < n; ++k) {
      if (k != i) prod = prod * (mix.qrates_[k] - mix.qrates_[i]);
    }
    mix.qweights_[i] = detail::QComplex{1, 0} / prod;
  }
  mix.terms_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    mix.terms_[i] = {mix.qweights_[i].to_double(), rates[i]};
  }
  mix.finish_setup();
  return mix;
}

void ExponentialMixture::finish_setup() {
  if (terms_.empty()) {
    throw std::invalid_argument("ExponentialMixture: no terms");
  }
  if (!(scale_ != 0.0) || !std::isfinite(scale_)) {
    throw std::invalid_argument("ExponentialMixture: scale must be finite and nonzero");
  }

  std::vector<bool> paired(terms_.size(), false);
  for (size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (!(t.rate.real() > 0.0)) {
      throw std::invalid_argument("ExponentialMixture: rate " + std::to_string(i) +
                                  " has nonpositive real part");
    }
    if (!std::isfinite(t.rate.real()) || !std::isfinite(t.rate.imag()) ||
        !std::isfinite(t.weight.real()) || !std::isfinite(t.weight.imag())) {
      throw std::invalid_argument("ExponentialMixture: non-finite term");
    }
    if (t.rate.imag() != 0.0) has_complex_terms_ = true;
  }

  // Non-real terms must appear as conjugate pairs, otherwise the density
  // cannot be real on z >= 0.
  const double tol = 1e-8;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (paired[i] || terms_[i].rate.imag() == 0.0) continue;
    bool found = false;
    for (size_t k = i + 1; k < terms_.size(); ++k) {
      if (paired[k]) continue;
      const double rate_gap = std::abs(terms_[k].rate - std::conj(terms_[i].rate));
      const double weight_gap = std::abs(terms_[k].weight - std::conj(terms_[i].weight));
      if (rate_gap <= tol * std::abs(terms_[i].rate) &&
          weight_gap <= tol * std::abs(terms_[i].weight) + 1e-300) {
        paired[i] = paired[k] = true;
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument(
          "ExponentialMixture: non-real term lacks a conjugate partner");
    }
  }

  // Unit total mass: c * sum eta/omega = 1.
  detail::QComplex total{0, 0};
  for (size_t i = 0; i < terms_.size(); ++i) {
    total = total + qweights_[i] / qrates_[i];
  }
  const double mass = scale_ * detail::to_d(total.re);
  const double residual = std::abs(scale_) * std::abs(detail::to_d(total.im));
  if (std::abs(mass - 1.0) > 1e-9 || residual > 1e-9) {
    throw NumericalError("ExponentialMixture: CDF limit " + std::to_string(mass) +
                         " differs from 1 beyond 1e-9");
  }
}

double ExponentialMixture::pdf(double z) const {
  if (z < 0.0) return 0.0;
  detail::QComplex acc{0, 0};
  for (size_t i = 0; i < qrates_.size(); ++i) {
    const detail::QComplex e = detail::qexp(detail::QComplex{0, 0} - (__float128)z * qrates_[i]);
    acc = acc + qweights_[i] * e;
  }
  return detail::take_real((__float128)scale_ * acc, "pdf");
}

double ExponentialMixture::cdf(double z) const {
  if (z <= 0.0) return 0.0;
  detail::QComplex acc{0, 0};
  for (size_t i = 0; i < qrates_.size(); ++i) {
    const detail::QComplex e = detail::qexp(detail::QComplex{0, 0} - (__float128)z * qrates_[i]);
    acc = acc + (qweights_[i] / qrates_[i]) * (detail::QComplex{1, 0} - e);
  }
  return detail::take_real((__float128)scale_ * acc, "cdf");
}

double ExponentialMixture::mean() const {
  detail::QComplex acc{0, 0};
  for (size_t i = 0; i < qrates_.size(); ++i) {
    acc = acc + qweights_[i] / (qrates_[i] * qrates_[i]);
  }
  return detail::take_real((__float128)scale_ * acc, "mean");
}

double ExponentialMixture::mgf(double s) const {
  if (std::isinf(s) && s < 0.0) return 0.0;
  double min_re = std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) min_re = std::min(min_re, t.rate.real());
  if (!(s < min_re)) {
    throw std::invalid_argument("ExponentialMixture::mgf: needs s < min Re(rate)");
  }
  detail::QComplex acc{0, 0};
  for (size_t i = 0; i < qrates_.size(); ++i) {
    acc = acc + qweights_[i] / (qrates_[i] - detail::QComplex{(__float128)s, 0});
  }
  return detail::take_real((__float128)scale_ * acc, "mgf");
}

std::complex<double> ExponentialMixture::cf(double t) const {
  detail::QComplex acc{0, 0};
  for (size_t i = 0; i < qrates_.size(); ++i) {
    acc = acc + qweights_[i] / (qrates_[i] - detail::QComplex{0, (__float128)t});
  }
  return ((__float128)scale_ * acc).to_double();
}

double ExponentialMixture::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("ExponentialMixture::quantile: need 0 < p < 1");
  }
  double lo = 0.0;
  double hi = 1.0 / terms_.front().rate.real();
  for (int guard = 0; cdf(hi) < p && guard < 2048; ++guard) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ExponentialMixture mixture_from_denominator(std::span<const double> unit_coeffs,
                                            double noise_variance) {
  if (unit_coeffs.size() < 2) {
    throw std::invalid_argument("mixture_from_denominator: need degree >= 1");
  }
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("mixture_from_denominator: noise variance must be > 0");
  }
  for (double c : unit_coeffs) {
    if (!std::isfinite(c) || c < 0.0) {
      throw std::invalid_argument(
          "mixture_from_denominator: coefficients must be finite and nonnegative");
    }
  }
  const int degree = static_cast<int>(unit_coeffs.size()) - 1;
  const double c0 = unit_coeffs.front();
  const double c_top = unit_coeffs.back();
  if (!(c0 > 0.0)) {
    throw std::invalid_argument("mixture_from_denominator: constant coefficient must be > 0");
  }
  if (!(c_top > 0.0)) {
    throw SingularProfileError(
        "mixture_from_denominator: top coefficient vanished (zero desired-user power?)");
  }

  // Roots of sum c_i (-v)^i, i.e. of the alternating-sign polynomial.
  const auto solve = [&](std::span<const double> c) {
    std::vector<double> alt(c.size());
    for (size_t i = 0; i < c.size(); ++i) alt[i] = (i % 2 == 0) ? c[i] : -c[i];
    return poly_roots_refined(alt);
  };

  // Clustering is judged pair-relative: |w_i - w_k| < 1e-6 max(|w_i|, |w_k|).
  // The spectrum legitimately spans [O(1), O(1/noise)] at high SNR, so a
  // radius tied to the global largest root would misfire on well-separated
  // small roots; only relatively close pairs make the residues meaningless.
  const auto cluster_of = [&](const std::vector<std::complex<double>>& roots)
      -> std::vector<std::complex<double>> {
    size_t ci = 0, ck = 0;
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < roots.size(); ++i) {
      for (size_t k = i + 1; k < roots.size(); ++k) {
        const double scale = std::max(std::abs(roots[i]), std::abs(roots[k]));
        const double ratio = std::abs(roots[i] - roots[k]) / scale;
        if (ratio < worst_ratio) {
          worst_ratio = ratio;
          ci = i;
          ck = k;
        }
      }
    }
    if (!(worst_ratio < 1e-6)) return {};
    const double radius = 10e-6 * std::abs(roots[ci]);
    std::vector<std::complex<double>> cluster;
    for (const auto& r : roots) {
      if (std::abs(r - roots[ci]) <= radius || std::abs(r - roots[ck]) <= radius) {
        cluster.push_back(r);
      }
    }
    return cluster;
  };

  std::vector<std::complex<double>> roots = solve(unit_coeffs);
  if (!cluster_of(roots).empty()) {
    // One deterministic relative perturbation, then give up: the residue
    // weights assume distinct roots and confluent forms are not supported.
    std::vector<double> perturbed(unit_coeffs.begin(), unit_coeffs.end());
    for (size_t i = 0; i < perturbed.size(); ++i) {
      const double u =
          static_cast<double>(detail::splitmix64(i + 1) >> 11) / 9007199254740992.0;  // [0,1)
      perturbed[i] *= 1.0 + 1e-9 * (2.0 * u - 1.0);
    }
    roots = solve(perturbed);
    const auto cluster = cluster_of(roots);
    if (!cluster.empty()) {
      throw DegenerateRootsError(
          "mixture_from_denominator: repeated denominator roots persist after perturbation",
          cluster);
    }
  }

  std::vector<std::complex<double>> rates(roots.size());
  for (size_t i = 0; i < roots.size(); ++i) {
    if (!(roots[i].real() > 0.0)) {
      throw NumericalError("mixture_from_denominator: root with nonpositive real part");
    }
    rates[i] = roots[i] * noise_variance;
  }
  const double scale = c0 * std::pow(noise_variance, degree) / c_top;
  return ExponentialMixture::from_rates(scale, rates);
}

}  // namespace macrodiv
