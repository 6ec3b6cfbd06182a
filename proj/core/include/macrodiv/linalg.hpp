// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "macrodiv/errors.hpp"

namespace macrodiv {

/// Exact permanents are exponential in the smaller matrix dimension; past
/// this size the kernels refuse to run rather than silently take hours.
inline constexpr int kPermanentSizeLimit = 14;

/// Permanent of a square matrix: the sum of all diagonal products, i.e. the
/// determinant expansion without the sign alternation. Computed with Ryser's
/// inclusion-exclusion formula in O(2^n * n) using Gray-code subset updates
/// and compensated accumulation. perm of the 0x0 matrix is 1.
double perm_square(const Eigen::MatrixXd& a);

/// Permanent of a rectangular m x n matrix. For m <= n it sums diagonal
/// products over all one-to-one maps of rows into columns, expanded as a sum
/// of square permanents over column subsets. For m > n it is defined as the
/// permanent of the transpose, which matches how the Gram-determinant
/// identity uses tall matrices. The empty matrix has permanent 1.
double perm_rect(const Eigen::MatrixXd& a);

/// i-th elementary symmetric function of the values in d, i.e. the sum of
/// all i-fold products. esf(d, 0) == 1; returns 0 when i exceeds d's length.
double esf(std::span<const double> d, int i);

/// All elementary symmetric functions 0..max_i of d in one pass.
std::vector<double> esf_all(std::span<const double> d, int max_i);

/// A k-element subset of {0, ..., n-1} with strictly increasing members.
class IndexSubset {
 public:
  IndexSubset(int universe, std::vector<int> members);

  int universe() const noexcept { return universe_; }
  int size() const noexcept { return static_cast<int>(members_.size()); }
  const std::vector<int>& members() const noexcept { return members_; }

  /// The complementary subset of the same universe.
  IndexSubset complement() const;

  friend bool operator==(const IndexSubset&, const IndexSubset&) = default;

 private:
  int universe_;
  std::vector<int> members_;
};

/// Lazily enumerates all C(n, k) subsets of {0..n-1} in lexicographic order.
///
///   for (const IndexSubset& s : SubsetRange(nr, k)) { ... s.complement() ... }
class SubsetRange {
 public:
  SubsetRange(int n, int k);

  class iterator {
   public:
    using value_type = IndexSubset;
    using reference = const IndexSubset&;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(int n, int k, bool at_end);

    reference operator*() const noexcept { return current_; }
    const IndexSubset* operator->() const noexcept { return &current_; }
    iterator& operator++();
    iterator operator++(int);
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.done_ == b.done_ &&
             (a.done_ || a.current_.members() == b.current_.members());
    }

   private:
    IndexSubset current_{0, {}};
    bool done_ = true;
  };

  iterator begin() const { return iterator(n_, k_, false); }
  iterator end() const { return iterator(n_, k_, true); }

  int universe() const noexcept { return n_; }
  int subset_size() const noexcept { return k_; }

 private:
  int n_;
  int k_;
};

/// Convenience wrapper mirroring the enumeration entry point by name.
inline SubsetRange subsets(int n, int k) { return SubsetRange(n, k); }

/// Rows of `a` restricted to the given index list (all columns kept).
Eigen::MatrixXd select_rows(const Eigen::MatrixXd& a, std::span<const int> rows);
/// Columns of `a` restricted to the given index list (all rows kept).
Eigen::MatrixXd select_cols(const Eigen::MatrixXd& a, std::span<const int> cols);

struct GramDetEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of E{|X^H X|} where X has independent zero-mean
/// complex Gaussian entries with variances Q_ik. This is the stochastic side
/// of the identity that equates the expectation with Perm(Q); it exists so
/// the permanent kernels can be tested against something that does not share
/// their code path. Deterministic for a fixed seed.
GramDetEstimate expected_gram_det_oracle(const Eigen::MatrixXd& q,
                                         std::int64_t samples,
                                         std::uint64_t seed);

}  // namespace macrodiv
