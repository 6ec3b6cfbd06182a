// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <cmath>

namespace macrodiv::detail {

// Neumaier variant of Kahan summation. The alternating-sign accumulations in
// the permanent kernels lose digits with a plain running sum.
struct NeumaierSum {
  double sum = 0.0;
  double correction = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      correction += (sum - t) + x;
    } else {
      correction += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + correction; }
};

}  // namespace macrodiv::detail
