// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <complex>

namespace macrodiv::detail {

// Minimal complex arithmetic over __float128.
//
// The residue weights 1/prod(w_k - w_i) blow up like (root spacing)^-(L-1)
// and the mixture sums then cancel back down to O(1). With double arithmetic
// that cancellation caps the achievable PDF/CDF accuracy near 1e-6 for
// moderately clustered rates; carrying the weights and the exponential sums
// in quad precision keeps evaluations accurate to ~1e-14 even when the rate
// polynomial has nearly multiple roots.
struct QComplex {
  __float128 re = 0;
  __float128 im = 0;

  QComplex() = default;
  QComplex(__float128 r, __float128 i) : re(r), im(i) {}
  explicit QComplex(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_double() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

inline QComplex operator+(QComplex a, QComplex b) { return {a.re + b.re, a.im + b.im}; }
inline QComplex operator-(QComplex a, QComplex b) { return {a.re - b.re, a.im - b.im}; }
inline QComplex operator*(QComplex a, QComplex b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline QComplex operator*(__float128 s, QComplex a) { return {s * a.re, s * a.im}; }

inline QComplex operator/(QComplex a, QComplex b) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  if ((b.re >= 0 ? b.re : -b.re) >= (b.im >= 0 ? b.im : -b.im)) {
    const __float128 r = b.im / b.re;
    const __float128 d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  const __float128 r = b.re / b.im;
  const __float128 d = b.re * r + b.im;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

// exp(z) for QComplex; defined in mixture.cpp (needs libquadmath).
QComplex qexp(QComplex z);

}  // namespace macrodiv::detail
