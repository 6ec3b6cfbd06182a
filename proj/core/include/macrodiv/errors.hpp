// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace macrodiv {

/// Matrix or vector shape does not match what the operation requires.
class DimensionError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A combinatorial kernel was asked to run past its exact-computation guard.
class SizeLimitError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A desired-user power entry is zero where the analysis needs P1 inverted.
class SingularProfileError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A column of the power matrix sums to zero.
class ZeroColumnError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Profile/scenario name or file content is not understood.
class FormatError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Denominator roots stayed clustered after the perturbation retry, so the
/// distinct-root residue weights are meaningless. Carries the cluster.
class DegenerateRootsError : public std::runtime_error {
 public:
  DegenerateRootsError(const std::string& what,
                       std::vector<std::complex<double>> cluster)
      : std::runtime_error(what), cluster_(std::move(cluster)) {}

  const std::vector<std::complex<double>>& cluster() const noexcept {
    return cluster_;
  }

 private:
  std::vector<std::complex<double>> cluster_;
};

/// Adaptive quadrature ran out of subdivisions before reaching tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_abs_error)
      : std::runtime_error(what), achieved_abs_error_(achieved_abs_error) {}

  double achieved_abs_error() const noexcept { return achieved_abs_error_; }

 private:
  double achieved_abs_error_ = 0.0;
};

/// A channel draw was too ill-conditioned for the receiver computation.
class SingularChannelError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal consistency check on computed values failed (e.g. a mixture
/// evaluated with a non-negligible imaginary residual).
class NumericalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace macrodiv
