// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <functional>

#include "macrodiv/errors.hpp"

namespace macrodiv {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 10000;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b] with
/// worst-interval-first bisection. All integrands in this project are smooth
/// and bounded, so a handful of subdivisions normally suffices; running out
/// of the subdivision budget raises QuadratureError carrying the achieved
/// error estimate.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opt = {});

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opt = {}) {
  return integrate_adaptive(f, a, b, opt).value;
}

}  // namespace macrodiv
