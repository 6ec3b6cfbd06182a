// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include "macrodiv/power_profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "macrodiv/compensated.hpp"
#include "macrodiv/rng.hpp"

namespace macrodiv {

namespace {

constexpr double kMinDistanceFactor = 0.01;  // clamp d >= 0.01 * cell_radius

double norm_cdf(double x) { return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0); }

}  // namespace

PowerProfile::PowerProfile(Eigen::MatrixXd p) : p_(std::move(p)) {
  if (p_.rows() < 1 || p_.cols() < 1) {
    throw DimensionError("PowerProfile: matrix must be nonempty");
  }
  if (!p_.allFinite() || (p_.array() < 0.0).any()) {
    throw std::invalid_argument("PowerProfile: entries must be finite and nonnegative");
  }
  for (Eigen::Index k = 0; k < p_.cols(); ++k) {
    if ((p_.col(k).array() <= 0.0).all()) {
      throw ZeroColumnError("PowerProfile: user " + std::to_string(k + 1) +
                            " has no nonzero link");
    }
  }
}

UserView user_view(const PowerProfile& profile, int user) {
  if (user < 0 || user >= profile.n()) {
    throw std::out_of_range("user_view: user index " + std::to_string(user) +
                            " outside [0, " + std::to_string(profile.n()) + ")");
  }
  UserView view;
  view.user = user;
  view.p1 = profile.p().col(user);
  view.q2.resize(profile.n_r(), profile.n() - 1);
  Eigen::Index out = 0;
  for (Eigen::Index k = 0; k < profile.p().cols(); ++k) {
    if (k == user) continue;
    view.q2.col(out++) = profile.p().col(k);
  }
  return view;
}

void require_invertible_p1(const UserView& view) {
  for (Eigen::Index i = 0; i < view.p1.size(); ++i) {
    if (!(view.p1(i) > 0.0)) {
      throw SingularProfileError("desired-user power P_" + std::to_string(i + 1) +
                                 "," + std::to_string(view.user + 1) +
                                 " is zero; P1 is singular");
    }
  }
}

PowerProfile normalize_columns(const PowerProfile& profile) {
  Eigen::MatrixXd p = profile.p();
  for (Eigen::Index k = 0; k < p.cols(); ++k) {
    detail::NeumaierSum sum;
    for (Eigen::Index i = 0; i < p.rows(); ++i) sum.add(p(i, k));
    const double s = sum.value();
    if (!(s > 0.0)) {
      throw ZeroColumnError("normalize_columns: column " + std::to_string(k + 1) +
                            " sums to zero");
    }
    p.col(k) /= s;
  }
  return PowerProfile(std::move(p));
}

PowerProfile builtin_profile(std::string_view name) {
  if (name == "P_M") {
    Eigen::MatrixXd p(3, 3);
    p << 0.3500, 0.0117, 0.1225,
         0.6292, 0.9282, 0.0741,
         0.0208, 0.0601, 0.8035;
    return PowerProfile(std::move(p));
  }
  if (name == "P_P") {
    return PowerProfile(Eigen::MatrixXd::Constant(3, 3, 0.3333));
  }
  if (name == "P_D4") {
    Eigen::MatrixXd p(6, 4);
    p << 0.2061,  1.3941, 1.1034, 4.6938,
         0.2061,  1.3941, 1.1034, 4.6938,
         2.2923, 16.8146, 0.0857, 0.6790,
         2.2923, 16.8146, 0.0857, 0.6790,
         0.8361,  3.4834, 2.8181, 0.6700,
         0.8361,  3.4834, 2.8181, 0.6700;
    return PowerProfile(std::move(p));
  }
  throw FormatError("builtin_profile: unknown name '" + std::string(name) +
                    "' (expected P_M, P_P or P_D4)");
}

std::vector<std::string> builtin_profile_names() { return {"P_M", "P_P", "P_D4"}; }

Scenario Scenario::edge_excited_cell(int users, int antennas_per_bs, double cell_radius) {
  Scenario s;
  s.users = users;
  s.antennas_per_bs = antennas_per_bs;
  s.cell_radius = cell_radius;
  s.bs_positions.clear();
  s.user_region.clear();
  for (int b = 0; b < 3; ++b) {
    const double angle = std::numbers::pi / 2.0 + b * 2.0 * std::numbers::pi / 3.0;
    const Eigen::Vector2d corner(cell_radius * std::cos(angle), cell_radius * std::sin(angle));
    s.bs_positions.push_back(corner);
    s.user_region.push_back(corner);
  }
  return s;
}

void Scenario::validate() const {
  if (bs_positions.empty()) throw std::invalid_argument("Scenario: no base stations");
  if (antennas_per_bs < 1) throw std::invalid_argument("Scenario: antennas_per_bs must be >= 1");
  if (user_region.size() < 3) throw std::invalid_argument("Scenario: user_region needs >= 3 vertices");
  if (users < 1) throw std::invalid_argument("Scenario: users must be >= 1");
  if (!(shadowing_std_db >= 0.0)) throw std::invalid_argument("Scenario: shadowing std must be >= 0 dB");
  if (!(pathloss_exponent > 2.0)) throw std::invalid_argument("Scenario: path loss exponent must be > 2");
  if (!(calibration.quantile > 0.0 && calibration.quantile < 1.0)) {
    throw std::invalid_argument("Scenario: calibration quantile must be in (0, 1)");
  }
  if (!(cell_radius > 0.0)) throw std::invalid_argument("Scenario: cell_radius must be > 0");
}

namespace {

// Uniform point in a convex polygon: fan-triangulate around vertex 0, pick a
// triangle by area, then the standard sqrt warp inside it.
Eigen::Vector2d sample_in_polygon(const std::vector<Eigen::Vector2d>& poly,
                                  std::mt19937_64& engine) {
  const size_t ntri = poly.size() - 2;
  std::vector<double> area(ntri);
  double total = 0.0;
  for (size_t t = 0; t < ntri; ++t) {
    const Eigen::Vector2d u = poly[t + 1] - poly[0];
    const Eigen::Vector2d v = poly[t + 2] - poly[0];
    area[t] = 0.5 * std::abs(u.x() * v.y() - u.y() * v.x());
    total += area[t];
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double pick = unit(engine) * total;
  size_t t = 0;
  while (t + 1 < ntri && pick > area[t]) {
    pick -= area[t];
    ++t;
  }
  const double r1 = std::sqrt(unit(engine));
  const double r2 = unit(engine);
  return poly[0] + r1 * ((poly[t + 1] - poly[0]) + r2 * (poly[t + 2] - poly[t + 1]));
}

}  // namespace

double calibrate_transmit_power(const Scenario& scenario,
                                const Eigen::Vector2d& user_position,
                                double noise_variance) {
  scenario.validate();
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("calibrate_transmit_power: noise variance must be > 0");
  }
  const double gamma = scenario.pathloss_exponent;
  const double thr_db = scenario.calibration.threshold_db + 10.0 * std::log10(noise_variance);
  std::vector<double> base_db;  // -10 gamma log10(d_b) per site
  base_db.reserve(scenario.bs_positions.size());
  for (const auto& bs : scenario.bs_positions) {
    const double d = std::max((user_position - bs).norm(),
                              kMinDistanceFactor * scenario.cell_radius);
    base_db.push_back(-10.0 * gamma * std::log10(d));
  }
  const double best_base = *std::max_element(base_db.begin(), base_db.end());

  const double sigma_sh = scenario.shadowing_std_db;
  if (sigma_sh == 0.0) {
    return std::pow(10.0, (thr_db - best_base) / 10.0);
  }

  // Pr[max_b (T_db + base_b + S_b) > thr] = 1 - prod_b Phi((thr - T_db - base_b)/sigma)
  const auto exceedance = [&](double t_db) {
    double prod = 1.0;
    for (double b : base_db) prod *= norm_cdf((thr_db - t_db - b) / sigma_sh);
    return 1.0 - prod;
  };
  const double q = scenario.calibration.quantile;
  // Bracket: +-12 sigma around the no-shadowing answer covers any quantile of
  // practical interest.
  double lo = thr_db - best_base - 12.0 * sigma_sh;
  double hi = thr_db - best_base + 12.0 * sigma_sh;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (exceedance(mid) < q ? lo : hi) = mid;
  }
  return std::pow(10.0, 0.5 * (lo + hi) / 10.0);
}

Drop generate_drop_full(const Scenario& scenario, std::uint64_t seed) {
  scenario.validate();
  const int sites = static_cast<int>(scenario.bs_positions.size());
  const int n_r = scenario.n_r();

  std::mt19937_64 engine(detail::mix64(seed, 0x64726f70u));  // "drop"
  std::normal_distribution<double> normal(0.0, 1.0);

  Eigen::MatrixXd p(n_r, scenario.users);
  Drop drop{PowerProfile(Eigen::MatrixXd::Ones(1, 1)), {}, {}};
  drop.transmit_scale.resize(static_cast<size_t>(scenario.users));
  drop.user_positions.resize(static_cast<size_t>(scenario.users));

  for (int k = 0; k < scenario.users; ++k) {
    const Eigen::Vector2d pos = sample_in_polygon(scenario.user_region, engine);
    drop.user_positions[static_cast<size_t>(k)] = pos;
    const double t_k = calibrate_transmit_power(scenario, pos, 1.0);
    drop.transmit_scale[static_cast<size_t>(k)] = t_k;
    for (int b = 0; b < sites; ++b) {
      const double d = std::max((pos - scenario.bs_positions[static_cast<size_t>(b)]).norm(),
                                kMinDistanceFactor * scenario.cell_radius);
      const double shadow_db = scenario.shadowing_std_db * normal(engine);
      const double gain = t_k * std::pow(d, -scenario.pathloss_exponent) *
                          std::pow(10.0, shadow_db / 10.0);
      // Antennas at one site share path loss and shadowing.
      for (int a = 0; a < scenario.antennas_per_bs; ++a) {
        p(b * scenario.antennas_per_bs + a, k) = gain;
      }
    }
  }
  drop.profile = PowerProfile(std::move(p));
  return drop;
}

PowerProfile generate_drop(const Scenario& scenario, std::uint64_t seed) {
  return generate_drop_full(scenario, seed).profile;
}

}  // namespace macrodiv
