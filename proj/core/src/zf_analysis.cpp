// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include "macrodiv/zf_analysis.hpp"

#include <cmath>

#include "macrodiv/compensated.hpp"
#include "macrodiv/linalg.hpp"

namespace macrodiv {

DenominatorPoly zf_denominator_coeffs(const UserView& view, double noise_variance) {
  const int n_r = view.n_r();
  const int n = view.n();
  if (n_r < n) {
    throw DimensionError("zf_denominator_coeffs: needs n_r >= n, got n_r=" +
                         std::to_string(n_r) + ", n=" + std::to_string(n));
  }
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("zf_denominator_coeffs: noise variance must be > 0");
  }
  const int big_l = n_r - n + 1;

  std::vector<detail::NeumaierSum> acc(static_cast<size_t>(big_l) + 1);
  std::vector<double> comp_powers;
  for (const IndexSubset& sigma : subsets(n_r, n - 1)) {
    const double perm_val = perm_square(select_rows(view.q2, sigma.members()));
    const IndexSubset comp = sigma.complement();
    comp_powers.clear();
    for (int r : comp.members()) comp_powers.push_back(view.p1(r));
    const std::vector<double> tr = esf_all(comp_powers, big_l);
    for (int i = 0; i <= big_l; ++i) {
      acc[static_cast<size_t>(i)].add(tr[static_cast<size_t>(i)] * perm_val);
    }
  }

  DenominatorPoly poly;
  poly.noise_variance = noise_variance;
  poly.unit_coeffs.resize(static_cast<size_t>(big_l) + 1);
  poly.coeffs.resize(static_cast<size_t>(big_l) + 1);
  for (int i = 0; i <= big_l; ++i) {
    poly.unit_coeffs[static_cast<size_t>(i)] = acc[static_cast<size_t>(i)].value();
    poly.coeffs[static_cast<size_t>(i)] =
        poly.unit_coeffs[static_cast<size_t>(i)] * std::pow(noise_variance, -i);
  }
  return poly;
}

ExponentialMixture zf_mixture(const UserView& view, double noise_variance) {
  const DenominatorPoly poly = zf_denominator_coeffs(view, noise_variance);
  return mixture_from_denominator(poly.unit_coeffs, noise_variance);
}

double zf_special_case_rate(const PowerProfile& profile, int user, double noise_variance) {
  if (profile.n_r() != profile.n()) {
    throw DimensionError("zf_special_case_rate: only defined for n_r = n");
  }
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("zf_special_case_rate: noise variance must be > 0");
  }
  const UserView view = user_view(profile, user);
  const double theta = perm_rect(view.q2) / perm_square(profile.p());
  return noise_variance * theta;
}

double zf_k0(const UserView& view) {
  require_invertible_p1(view);
  const Eigen::MatrixXd scaled = view.p1.cwiseInverse().asDiagonal() * view.q2;
  double det_p1 = 1.0;
  for (Eigen::Index i = 0; i < view.p1.size(); ++i) det_p1 *= view.p1(i);
  return perm_rect(view.q2) / (det_p1 * perm_rect(scaled));
}

}  // namespace macrodiv
