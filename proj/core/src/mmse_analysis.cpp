// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include "macrodiv/mmse_analysis.hpp"

#include <cmath>
#include <limits>

#include "macrodiv/compensated.hpp"
#include "macrodiv/linalg.hpp"
#include "macrodiv/poly_roots.hpp"
#include "macrodiv/rng.hpp"

namespace macrodiv {

namespace {

// sum over k-subsets of the columns of m of Perm(column-selected submatrix),
// i.e. the coefficient machinery shared by the numerator and the zeta terms.
double column_subset_perm_sum(const Eigen::MatrixXd& m, int k) {
  if (k == 0) return 1.0;
  detail::NeumaierSum sum;
  for (const IndexSubset& sigma : subsets(static_cast<int>(m.cols()), k)) {
    sum.add(perm_rect(select_cols(m, sigma.members())));
  }
  return sum.value();
}

}  // namespace

double mmse_numerator(const UserView& view, double noise_variance) {
  if (!(noise_variance >= 0.0)) {
    throw std::invalid_argument("mmse_numerator: noise variance must be >= 0");
  }
  const int n = view.n();
  detail::NeumaierSum total;
  for (int k = 0; k <= n - 1; ++k) {
    total.add(column_subset_perm_sum(view.q2, k) * std::pow(noise_variance, n - 1 - k));
  }
  return total.value();
}

std::vector<double> MmseDenominator::unit_coeffs(double s2) const {
  if (!(s2 >= 0.0)) {
    throw std::invalid_argument("MmseDenominator::unit_coeffs: noise variance must be >= 0");
  }
  const int n = static_cast<int>(phi_hat.cols());
  std::vector<double> b(static_cast<size_t>(phi_hat.rows()), 0.0);
  for (Eigen::Index i = 0; i < phi_hat.rows(); ++i) {
    detail::NeumaierSum sum;
    for (int k = 0; k < n; ++k) {
      sum.add(phi_hat(i, k) * std::pow(s2, n - 1 - k));
    }
    b[static_cast<size_t>(i)] = sum.value();
  }
  return b;
}

MmseDenominator mmse_denominator_coeffs(const UserView& view, double noise_variance) {
  const int n_r = view.n_r();
  const int n = view.n();
  if (n_r < n) {
    throw DimensionError("mmse_denominator_coeffs: needs n_r >= n");
  }
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("mmse_denominator_coeffs: noise variance must be > 0");
  }

  MmseDenominator den;
  den.noise_variance = noise_variance;
  den.phi_hat = Eigen::MatrixXd::Zero(n_r + 1, n);
  std::vector<double> comp_powers;
  for (int k = 0; k <= n - 1; ++k) {
    for (const IndexSubset& sigma : subsets(n_r, k)) {
      const double perm_val = perm_rect(select_rows(view.q2, sigma.members()));
      const IndexSubset comp = sigma.complement();
      comp_powers.clear();
      for (int r : comp.members()) comp_powers.push_back(view.p1(r));
      const std::vector<double> tr = esf_all(comp_powers, n_r - k);
      for (int i = 0; i <= n_r - k; ++i) {
        den.phi_hat(i, k) += tr[static_cast<size_t>(i)] * perm_val;
      }
    }
  }

  den.coeffs.resize(static_cast<size_t>(n_r) + 1);
  for (int i = 0; i <= n_r; ++i) {
    detail::NeumaierSum sum;
    for (int k = 0; k <= n - 1; ++k) {
      sum.add(den.phi_hat(i, k) * std::pow(noise_variance, n - i - k - 1));
    }
    den.coeffs[static_cast<size_t>(i)] = sum.value();
  }
  return den;
}

ExponentialMixture mmse_mixture(const UserView& view, double noise_variance) {
  const MmseDenominator den = mmse_denominator_coeffs(view, noise_variance);
  return mixture_from_denominator(den.unit_coeffs(), noise_variance);
}

double HighSnrK0::k0(double s) const {
  if (thetas.empty()) return c0;
  std::complex<double> sum = 0.0;
  for (size_t i = 0; i < thetas.size(); ++i) sum += chis[i] / (thetas[i] + s);
  return c0 * sum.real();
}

HighSnrK0 mmse_k0_terms(const UserView& view) {
  require_invertible_p1(view);
  const int n = view.n();
  HighSnrK0 out;

  double det_p1 = 1.0;
  for (Eigen::Index i = 0; i < view.p1.size(); ++i) det_p1 *= view.p1(i);

  if (n == 1) {
    out.c0 = 1.0 / det_p1;
    out.zetas = {1.0};
    return out;
  }

  const Eigen::MatrixXd scaled = view.p1.cwiseInverse().asDiagonal() * view.q2;
  out.zetas.resize(static_cast<size_t>(n));
  for (int i = 0; i <= n - 1; ++i) {
    out.zetas[static_cast<size_t>(i)] = column_subset_perm_sum(scaled, i);
  }
  out.c0 = perm_rect(view.q2) / (det_p1 * out.zetas.back());

  // -theta_i are the roots of sum_i zeta_i s^(n-i-1); ascending coefficient j
  // is zeta_{n-1-j}.
  const auto solve = [&](const std::vector<double>& zetas) {
    std::vector<double> asc(zetas.size());
    for (size_t j = 0; j < zetas.size(); ++j) asc[j] = zetas[zetas.size() - 1 - j];
    std::vector<std::complex<double>> thetas;
    for (const auto& root : poly_roots_refined(asc)) thetas.push_back(-root);
    return thetas;
  };
  // Pair-relative cluster measure, as in mixture_from_denominator.
  const auto min_rel_gap = [](const std::vector<std::complex<double>>& v) {
    double ratio = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < v.size(); ++i) {
      for (size_t k = i + 1; k < v.size(); ++k) {
        const double scale = std::max(std::abs(v[i]), std::abs(v[k]));
        ratio = std::min(ratio, std::abs(v[i] - v[k]) / scale);
      }
    }
    return ratio;
  };

  out.thetas = solve(out.zetas);
  if (out.thetas.size() > 1 && min_rel_gap(out.thetas) < 1e-6) {
    std::vector<double> perturbed = out.zetas;
    for (size_t i = 0; i < perturbed.size(); ++i) {
      const double u =
          static_cast<double>(detail::splitmix64(i + 1) >> 11) / 9007199254740992.0;
      perturbed[i] *= 1.0 + 1e-9 * (2.0 * u - 1.0);
    }
    out.thetas = solve(perturbed);
    if (min_rel_gap(out.thetas) < 1e-6) {
      throw DegenerateRootsError("mmse_k0_terms: repeated theta roots persist after perturbation",
                                 out.thetas);
    }
  }
  for (const auto& theta : out.thetas) {
    if (!(theta.real() > 0.0)) {
      throw NumericalError("mmse_k0_terms: theta root with nonpositive real part");
    }
  }

  out.chis.resize(out.thetas.size());
  for (size_t i = 0; i < out.thetas.size(); ++i) {
    std::complex<double> prod = 1.0;
    for (size_t k = 0; k < out.thetas.size(); ++k) {
      if (k != i) prod *= out.thetas[k] - out.thetas[i];
    }
    out.chis[i] = out.zetas.back() / prod;
  }
  return out;
}

}  // namespace macrodiv
