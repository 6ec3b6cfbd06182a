// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include "macrodiv/poly_roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "macrodiv/qcomplex.hpp"

namespace macrodiv {

namespace {

// Parlett-Reinsch balancing (diagonal similarity with radix-2 scales).
// Eigen's EigenSolver does not balance, and the companion matrix of a
// polynomial whose roots span many decades is badly graded without it: the
// small roots of the high-SNR denominators come out with no correct digits.
void balance_in_place(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  for (bool again = true; again;) {
    again = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += std::abs(a(j, i));
        row += std::abs(a(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      const double total = col + row;
      double f = 1.0;
      while (col < row / 2.0) {
        col *= 2.0;
        row /= 2.0;
        f *= 2.0;
      }
      while (col >= row * 2.0) {
        col /= 2.0;
        row *= 2.0;
        f /= 2.0;
      }
      if (col + row < 0.95 * total) {
        again = true;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<std::complex<double>> poly_roots(std::span<const double> coeffs) {
  if (coeffs.size() < 2) {
    throw std::invalid_argument("poly_roots: need degree >= 1");
  }
  const int deg = static_cast<int>(coeffs.size()) - 1;
  const double lead = coeffs[static_cast<size_t>(deg)];
  if (lead == 0.0 || !std::isfinite(lead)) {
    throw std::invalid_argument("poly_roots: leading coefficient must be nonzero and finite");
  }

  // Scale the variable so roots sit near unit magnitude; the companion
  // eigenproblem conditions much better that way.
  double beta = 1.0;
  if (coeffs[0] != 0.0) {
    beta = std::pow(std::abs(coeffs[0] / lead), 1.0 / deg);
    if (!std::isfinite(beta) || beta == 0.0) beta = 1.0;
  }

  std::vector<double> monic(static_cast<size_t>(deg));
  double scale_pow = 1.0;  // beta^i
  for (int i = 0; i < deg; ++i) {
    monic[static_cast<size_t>(i)] = coeffs[static_cast<size_t>(i)] * scale_pow;
    scale_pow *= beta;
  }
  const double lead_scaled = lead * scale_pow;
  for (double& c : monic) c /= lead_scaled;

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i + 1 < deg; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -monic[static_cast<size_t>(i)];
  balance_in_place(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("poly_roots: companion eigenvalue iteration failed");
  }

  std::vector<std::complex<double>> roots(static_cast<size_t>(deg));
  for (int i = 0; i < deg; ++i) {
    std::complex<double> r = solver.eigenvalues()(i) * beta;
    if (std::abs(r.imag()) < 1e-8 * std::abs(r.real())) r = {r.real(), 0.0};
    roots[static_cast<size_t>(i)] = r;
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<std::complex<double>> poly_roots_refined(std::span<const double> coeffs) {
  const std::vector<std::complex<double>> seeds = poly_roots(coeffs);
  using detail::QComplex;
  const size_t n = seeds.size();
  std::vector<QComplex> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = QComplex(seeds[i]);

  // Ehrlich-Aberth simultaneous iteration in extended precision. The mutual
  // repulsion term keeps close-pair roots from collapsing onto each other,
  // which plain per-root Newton does when the eigenvalue seeds are coarser
  // than the pair separation.
  const auto eval = [&](QComplex x, QComplex& p, QComplex& dp) {
    p = QComplex{0, 0};
    dp = QComplex{0, 0};
    for (size_t i = coeffs.size(); i-- > 0;) {
      dp = dp * x + p;
      p = p * x + QComplex{(__float128)coeffs[i], 0};
    }
  };

  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    converged = true;
    for (size_t i = 0; i < n; ++i) {
      QComplex p, dp;
      eval(v[i], p, dp);
      if (dp.re == 0 && dp.im == 0) continue;
      const QComplex newton = p / dp;
      QComplex repulse{0, 0};
      for (size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        const QComplex gap = v[i] - v[k];
        if (gap.re == 0 && gap.im == 0) continue;
        repulse = repulse + QComplex{1, 0} / gap;
      }
      const QComplex denom = QComplex{1, 0} - newton * repulse;
      if (denom.re == 0 && denom.im == 0) continue;
      const QComplex step = newton / denom;
      v[i] = v[i] - step;
      const double step_mag = std::abs(step.to_double());
      const double mag = std::abs(v[i].to_double());
      if (!std::isfinite(step_mag) || !std::isfinite(mag)) return seeds;
      if (step_mag > 1e-28 * mag) converged = false;
    }
  }
  if (!converged) return seeds;

  std::vector<std::complex<double>> roots(n);
  for (size_t i = 0; i < n; ++i) {
    std::complex<double> r = v[i].to_double();
    if (std::abs(r.imag()) < 1e-12 * std::abs(r.real())) r = {r.real(), 0.0};
    roots[i] = r;
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace macrodiv
