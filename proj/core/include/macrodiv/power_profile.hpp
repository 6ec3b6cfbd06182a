// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "macrodiv/errors.hpp"

namespace macrodiv {

/// The n_r x n matrix of average link powers P_ik (linear units, not dB):
/// row i is a receive antenna, column k a user. Every entry is nonnegative
/// and every user has at least one nonzero link.
class PowerProfile {
 public:
  explicit PowerProfile(Eigen::MatrixXd p);

  int n_r() const noexcept { return static_cast<int>(p_.rows()); }
  int n() const noexcept { return static_cast<int>(p_.cols()); }
  const Eigen::MatrixXd& p() const noexcept { return p_; }

 private:
  Eigen::MatrixXd p_;
};

/// The per-user decomposition P = (p1 Q2): p1 is the desired user's column
/// (the diagonal of its channel covariance) and Q2 holds the interferer
/// columns in their original order.
struct UserView {
  int user = 0;
  Eigen::VectorXd p1;   // length n_r
  Eigen::MatrixXd q2;   // n_r x (n - 1)

  int n_r() const noexcept { return static_cast<int>(p1.size()); }
  int n() const noexcept { return static_cast<int>(q2.cols()) + 1; }
};

UserView user_view(const PowerProfile& profile, int user);

/// Throws SingularProfileError unless every desired-user power is > 0; the
/// inverse-dependent analyses (|P1|, P1^-1 Q2) call this first.
void require_invertible_p1(const UserView& view);

/// Scales each column to unit sum, so per-stream average receive power is
/// comparable across users. Column sums land on 1 within ~2 ulps.
PowerProfile normalize_columns(const PowerProfile& profile);

/// The built-in example matrices: "P_M" (3x3 unequal powers), "P_P" (3x3
/// equal powers) and "P_D4" (6x4, two antennas per site).
PowerProfile builtin_profile(std::string_view name);
std::vector<std::string> builtin_profile_names();

struct CalibrationSpec {
  double threshold_db = 3.0;  // best-site receive SNR to clear
  double quantile = 0.95;     // ...at least this often over shadowing
};

/// Drop geometry and large-scale fading parameters. Defaults describe an
/// edge-excited cell: three sites on the corners of an equilateral triangle
/// (circumradius cell_radius) jointly serving users dropped uniformly in the
/// triangle between them.
struct Scenario {
  std::vector<Eigen::Vector2d> bs_positions;
  int antennas_per_bs = 1;
  std::vector<Eigen::Vector2d> user_region;  // convex polygon
  int users = 3;
  double shadowing_std_db = 8.0;
  double pathloss_exponent = 3.5;
  CalibrationSpec calibration;
  double cell_radius = 1.0;

  static Scenario edge_excited_cell(int users, int antennas_per_bs,
                                    double cell_radius = 1.0);

  void validate() const;
  int n_r() const noexcept { return static_cast<int>(bs_positions.size()) * antennas_per_bs; }
};

struct Drop {
  PowerProfile profile;
  std::vector<double> transmit_scale;            // per-user T_k (linear)
  std::vector<Eigen::Vector2d> user_positions;
};

/// One random placement: users uniform in the scenario region, link power
/// P_ik = T_k * d_ik^-gamma * 10^(S_ik/10) with i.i.d. per-user-per-site
/// lognormal shadowing shared by co-located antennas, and T_k calibrated by
/// calibrate_transmit_power at unit noise variance. Deterministic per seed.
Drop generate_drop_full(const Scenario& scenario, std::uint64_t seed);
PowerProfile generate_drop(const Scenario& scenario, std::uint64_t seed);

/// Smallest transmit scale T such that the best-site receive SNR
/// max_b T d_b^-gamma 10^(S_b/10) / noise_variance exceeds the calibration
/// threshold with at least the calibration quantile of probability. Solved
/// by bisection on the closed-form exceedance of independent lognormals.
double calibrate_transmit_power(const Scenario& scenario,
                                const Eigen::Vector2d& user_position,
                                double noise_variance);

}  // namespace macrodiv
