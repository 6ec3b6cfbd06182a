// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "macrodiv/power_profile.hpp"
#include "macrodiv/ser.hpp"

namespace macrodiv {

enum class Receiver { Mmse, Zf };
Receiver receiver_from_string(std::string_view name);
std::string_view to_string(Receiver r);

/// One complex channel draw, H_ik ~ CN(0, P_ik).
struct ChannelRealization {
  Eigen::MatrixXcd h;
};

/// Deterministic in (seed, index): draw `index` of run `seed` is always the
/// same matrix, which is what makes the blocked parallel reductions merge
/// independently of worker count.
ChannelRealization sample_channel(const PowerProfile& profile, std::uint64_t seed,
                                  std::uint64_t index);

/// Exact MMSE output SINR h_u^H R^-1 h_u with R the interference-plus-noise
/// covariance; solved by Cholesky, no explicit inverse.
double mmse_sinr(const ChannelRealization& h, double noise_variance, int user);

/// Exact ZF output SNR 1 / (sigma^2 [(H^H H)^-1]_uu). Throws
/// SingularChannelError when cond(H^H H) exceeds 1e12.
double zf_snr(const ChannelRealization& h, double noise_variance, int user);

/// Algebraically equal route through the interference-nulling projection,
/// h_u^H (I - H2 (H2^H H2)^-1 H2^H) h_u / sigma^2; kept as a cross-check.
double zf_snr_projection(const ChannelRealization& h, double noise_variance, int user);

class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> samples,
                                 std::int64_t discarded = 0);

  const std::vector<double>& sorted_samples() const noexcept { return samples_; }
  std::int64_t count() const noexcept { return static_cast<std::int64_t>(samples_.size()); }
  std::int64_t discarded() const noexcept { return discarded_; }

  double cdf(double x) const;
  double mean() const;
  /// p-quantile of the sorted samples, 0 <= p <= 1.
  double quantile(double p) const;
  /// Kolmogorov-Smirnov distance against a reference CDF.
  double ks_distance(const std::function<double(double)>& reference_cdf) const;

 private:
  std::vector<double> samples_;
  std::int64_t discarded_ = 0;
};

/// Empirical distribution of the chosen receiver statistic over `samples`
/// channel draws. Ill-conditioned draws are discarded and counted.
EmpiricalDistribution empirical_cdf(const PowerProfile& profile, Receiver receiver,
                                    int user, double noise_variance,
                                    std::int64_t samples, std::uint64_t seed);

struct SerEstimate {
  double ser = 0.0;
  double std_error = 0.0;
};

/// Semi-analytic SER: averages the exact conditional symbol error
/// probability (conditional_sep) over channel draws, which reaches deep SER
/// levels without demodulation noise.
SerEstimate semi_analytic_ser(const PowerProfile& profile, Receiver receiver, int user,
                              double noise_variance, const ModulationSpec& mod,
                              std::int64_t samples, std::uint64_t seed);

/// Monte Carlo worker cap: MACRODIV_THREADS when set, otherwise the machine
/// parallelism. Results never depend on it.
int worker_count();

}  // namespace macrodiv
