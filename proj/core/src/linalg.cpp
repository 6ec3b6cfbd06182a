// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include "macrodiv/linalg.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <random>

#include "macrodiv/compensated.hpp"
#include "macrodiv/rng.hpp"

namespace macrodiv {

double perm_square(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("perm_square: matrix must be square, got " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  if (n > kPermanentSizeLimit) {
    throw SizeLimitError("perm_square: size " + std::to_string(n) +
                         " exceeds exact-computation guard " +
                         std::to_string(kPermanentSizeLimit));
  }

  // Ryser: perm(A) = (-1)^n sum_{S nonempty} (-1)^{|S|} prod_i sum_{j in S} a_ij.
  // Gray-code order flips one column per step, keeping row sums incremental.
  std::vector<double> row_sum(static_cast<size_t>(n), 0.0);
  detail::NeumaierSum total;
  int popcount = 0;
  const std::uint32_t count = 1u << n;
  for (std::uint32_t s = 1; s < count; ++s) {
    const int j = std::countr_zero(s);
    const std::uint32_t gray = s ^ (s >> 1);
    const bool added = (gray >> j) & 1u;
    const double sign_col = added ? 1.0 : -1.0;
    popcount += added ? 1 : -1;
    for (int i = 0; i < n; ++i) row_sum[static_cast<size_t>(i)] += sign_col * a(i, j);

    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= row_sum[static_cast<size_t>(i)];
    total.add(((n - popcount) & 1) ? -prod : prod);
  }
  return total.value();
}

double perm_rect(const Eigen::MatrixXd& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (m > n) {
    // Tall matrices follow the transpose convention used by the
    // Gram-determinant identity, where X^H X is cols x cols.
    return perm_rect(a.transpose());
  }
  if (m == 0) return 1.0;
  if (m > kPermanentSizeLimit) {
    throw SizeLimitError("perm_rect: min dimension " + std::to_string(m) +
                         " exceeds exact-computation guard " +
                         std::to_string(kPermanentSizeLimit));
  }
  if (m == n) return perm_square(a);

  detail::NeumaierSum total;
  for (const IndexSubset& cols : SubsetRange(static_cast<int>(n), static_cast<int>(m))) {
    total.add(perm_square(select_cols(a, cols.members())));
  }
  return total.value();
}

double esf(std::span<const double> d, int i) {
  if (i < 0) throw std::invalid_argument("esf: order must be nonnegative");
  if (i == 0) return 1.0;
  if (i > static_cast<int>(d.size())) return 0.0;
  return esf_all(d, i)[static_cast<size_t>(i)];
}

std::vector<double> esf_all(std::span<const double> d, int max_i) {
  if (max_i < 0) throw std::invalid_argument("esf_all: order must be nonnegative");
  std::vector<double> e(static_cast<size_t>(max_i) + 1, 0.0);
  e[0] = 1.0;
  int filled = 0;
  for (double x : d) {
    filled = std::min(filled + 1, max_i);
    for (int k = filled; k >= 1; --k) {
      e[static_cast<size_t>(k)] += x * e[static_cast<size_t>(k - 1)];
    }
  }
  return e;
}

IndexSubset::IndexSubset(int universe, std::vector<int> members)
    : universe_(universe), members_(std::move(members)) {
  int prev = -1;
  for (int m : members_) {
    if (m <= prev || m >= universe_) {
      throw std::invalid_argument(
          "IndexSubset: members must be strictly increasing within the universe");
    }
    prev = m;
  }
}

IndexSubset IndexSubset::complement() const {
  std::vector<int> comp;
  comp.reserve(static_cast<size_t>(universe_ - size()));
  size_t pos = 0;
  for (int i = 0; i < universe_; ++i) {
    if (pos < members_.size() && members_[pos] == i) {
      ++pos;
    } else {
      comp.push_back(i);
    }
  }
  return IndexSubset(universe_, std::move(comp));
}

SubsetRange::SubsetRange(int n, int k) : n_(n), k_(k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::invalid_argument("SubsetRange: need 0 <= k <= n");
  }
}

SubsetRange::iterator::iterator(int n, int k, bool at_end) : done_(at_end) {
  if (at_end) return;
  std::vector<int> first(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) first[static_cast<size_t>(i)] = i;
  current_ = IndexSubset(n, std::move(first));
}

SubsetRange::iterator& SubsetRange::iterator::operator++() {
  const int n = current_.universe();
  const int k = current_.size();
  std::vector<int> m = current_.members();
  int i = k - 1;
  while (i >= 0 && m[static_cast<size_t>(i)] == n - k + i) --i;
  if (i < 0) {
    done_ = true;
    return *this;
  }
  ++m[static_cast<size_t>(i)];
  for (int j = i + 1; j < k; ++j) m[static_cast<size_t>(j)] = m[static_cast<size_t>(j - 1)] + 1;
  current_ = IndexSubset(n, std::move(m));
  return *this;
}

SubsetRange::iterator SubsetRange::iterator::operator++(int) {
  iterator copy = *this;
  ++(*this);
  return copy;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& a, std::span<const int> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), a.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = a.row(rows[i]);
  return out;
}

Eigen::MatrixXd select_cols(const Eigen::MatrixXd& a, std::span<const int> cols) {
  Eigen::MatrixXd out(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = a.col(cols[j]);
  return out;
}

GramDetEstimate expected_gram_det_oracle(const Eigen::MatrixXd& q,
                                         std::int64_t samples,
                                         std::uint64_t seed) {
  if ((q.array() < 0.0).any()) {
    throw std::invalid_argument("expected_gram_det_oracle: variances must be nonnegative");
  }
  if (samples < 1000) {
    throw std::invalid_argument("expected_gram_det_oracle: need at least 1000 samples");
  }
  const Eigen::Index m = q.rows();
  const Eigen::Index n = q.cols();
  const Eigen::MatrixXd amp = (q.array() / 2.0).sqrt();

  std::mt19937_64 engine(detail::mix64(seed, 0x67726d64u));  // "grmd"
  std::normal_distribution<double> normal(0.0, 1.0);

  // Welford running moments on |X^H X|.
  double mean = 0.0;
  double m2 = 0.0;
  Eigen::MatrixXcd x(m, n);
  for (std::int64_t k = 0; k < samples; ++k) {
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        x(i, j) = std::complex<double>(normal(engine), normal(engine)) * amp(i, j);
      }
    }
    const double det = (x.adjoint() * x).determinant().real();
    const double delta = det - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (det - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

}  // namespace macrodiv
