// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include <doctest.h>

#include <random>

#include "macrodiv/linalg.hpp"
#include "support.hpp"

using namespace macrodiv;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("perm_square on fixed matrices") {
  CHECK(perm_square(Eigen::MatrixXd::Identity(2, 2)) == doctest::Approx(1.0));
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 4;
  CHECK(perm_square(a) == doctest::Approx(10.0));
  CHECK(perm_square(Eigen::MatrixXd::Ones(3, 3)) == doctest::Approx(6.0));
  CHECK(perm_square(Eigen::MatrixXd(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("perm_square rejects bad shapes") {
  CHECK_THROWS_AS(perm_square(Eigen::MatrixXd::Ones(2, 3)), DimensionError);
  CHECK_THROWS_AS(perm_square(Eigen::MatrixXd::Ones(15, 15)), SizeLimitError);
}

TEST_CASE("perm_rect fixed values and conventions") {
  CHECK(perm_rect(Eigen::MatrixXd(0, 0)) == doctest::Approx(1.0));
  CHECK(perm_rect(Eigen::MatrixXd(0, 4)) == doctest::Approx(1.0));
  Eigen::MatrixXd wide(2, 3);
  wide << 1, 2, 3, 4, 5, 6;
  CHECK(perm_rect(wide) == doctest::Approx(58.0));  // 5+6+8+12+12+15
  Eigen::MatrixXd col(2, 1);
  col << 3.5, 1.25;
  CHECK(perm_rect(col) == doctest::Approx(4.75));  // tall -> transpose convention
  CHECK_THROWS_AS(perm_rect(Eigen::MatrixXd::Ones(15, 20)), SizeLimitError);
}

TEST_CASE("perm_rect agrees with the injection-enumeration oracle") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> small(0, 3), large(1, 6);
    int m = small(rng);
    int n = large(rng);
    if (trial % 2 == 0) std::swap(m, n);  // exercise tall and wide
    const Eigen::MatrixXd a = support::random_matrix(rng, m, n, -2.0, 2.0);
    const double expected = support::perm_injection_oracle(a);
    CHECK(perm_rect(a) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("permutation invariance and row multilinearity") {
  std::mt19937_64 rng(77);
  const Eigen::MatrixXd a = support::random_matrix(rng, 3, 5);
  const double base = perm_rect(a);

  Eigen::MatrixXd rows_swapped = a;
  rows_swapped.row(0).swap(rows_swapped.row(2));
  CHECK(perm_rect(rows_swapped) == doctest::Approx(base).epsilon(1e-12));

  Eigen::MatrixXd cols_swapped = a;
  cols_swapped.col(1).swap(cols_swapped.col(4));
  CHECK(perm_rect(cols_swapped) == doctest::Approx(base).epsilon(1e-12));

  // Multilinearity in row 1: perm(a with row1 = u + v) = perm(u-row) + perm(v-row).
  Eigen::MatrixXd u = a, v = a;
  const Eigen::RowVectorXd split = support::random_matrix(rng, 1, 5);
  u.row(1) = split;
  v.row(1) = a.row(1) - split;
  CHECK(perm_rect(u) + perm_rect(v) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("size-0 subset sum is 1 and k-subset row/col sums agree") {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd a = support::random_matrix(rng, 4, 3);

  // Only the empty subset contributes at k = 0, and Perm(empty) = 1.
  double sum0 = 0.0;
  for (const IndexSubset& s : subsets(3, 0)) {
    sum0 += perm_rect(select_cols(a, s.members()));
  }
  CHECK(sum0 == doctest::Approx(1.0));

  for (int k = 1; k <= 3; ++k) {
    double by_rows = 0.0;
    for (const IndexSubset& s : subsets(4, k)) {
      by_rows += perm_rect(select_rows(a, s.members()));
    }
    double by_cols = 0.0;
    for (const IndexSubset& s : subsets(3, k)) {
      by_cols += perm_rect(select_cols(a, s.members()));
    }
    CHECK(by_rows == doctest::Approx(by_cols).epsilon(1e-12));
  }
}

TEST_CASE("diagonal scaling factors out of square permanents") {
  std::mt19937_64 rng(13);
  const Eigen::MatrixXd x = support::random_matrix(rng, 4, 4, -1.5, 1.5);
  const Eigen::VectorXd d = support::random_matrix(rng, 4, 1, 0.2, 2.0);
  const Eigen::MatrixXd scaled = d.asDiagonal() * x;
  CHECK(perm_square(scaled) ==
        doctest::Approx(d.prod() * perm_square(x)).epsilon(1e-12));
}

TEST_CASE("esf values and generating function") {
  const std::vector<double> d{1.0, 2.0, 3.0};
  CHECK(esf(d, 0) == doctest::Approx(1.0));
  CHECK(esf(d, 2) == doctest::Approx(11.0));
  CHECK(esf(std::vector<double>{5.0}, 2) == doctest::Approx(0.0));

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> tdist(-1.5, 1.5);
  const Eigen::VectorXd vals = support::random_matrix(rng, 6, 1, -2.0, 2.0);
  const std::vector<double> dv(vals.data(), vals.data() + vals.size());
  const std::vector<double> e = esf_all(dv, 6);
  for (int trial = 0; trial < 10; ++trial) {
    const double t = tdist(rng);
    double lhs = 0.0, tp = 1.0;
    for (int i = 0; i <= 6; ++i) {
      lhs += e[static_cast<size_t>(i)] * tp;
      tp *= t;
    }
    double rhs = 1.0;
    for (double x : dv) rhs *= 1.0 + x * t;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("subset enumeration order, count and complement") {
  std::vector<std::vector<int>> seen;
  for (const IndexSubset& s : subsets(3, 2)) seen.push_back(s.members());
  CHECK(seen == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});

  int count = 0;
  for (const IndexSubset& s : subsets(3, 0)) {
    CHECK(s.size() == 0);
    ++count;
  }
  CHECK(count == 1);

  count = 0;
  for ([[maybe_unused]] const IndexSubset& s : subsets(4, 2)) ++count;
  CHECK(count == 6);
  CHECK(IndexSubset(4, {0, 3}).complement().members() == std::vector<int>{1, 2});

  CHECK_THROWS_AS(subsets(2, 3), std::invalid_argument);
}

TEST_CASE("gram determinant oracle matches small closed forms") {
  Eigen::MatrixXd q(2, 1);
  q << 1, 1;
  const auto est = expected_gram_det_oracle(q, 20000, 7);
  CHECK(std::abs(est.estimate - 2.0) <= 3.0 * est.std_error);

  Eigen::MatrixXd q1(1, 1);
  q1 << 3;
  const auto est1 = expected_gram_det_oracle(q1, 20000, 8);
  CHECK(std::abs(est1.estimate - 3.0) <= 3.0 * est1.std_error);

  const auto est2 = expected_gram_det_oracle(Eigen::MatrixXd::Ones(3, 2), 40000, 9);
  CHECK(std::abs(est2.estimate - 6.0) <= 3.0 * est2.std_error);

  CHECK_THROWS_AS(expected_gram_det_oracle(q, 10, 1), std::invalid_argument);
  Eigen::MatrixXd neg(1, 1);
  neg << -1;
  CHECK_THROWS_AS(expected_gram_det_oracle(neg, 2000, 1), std::invalid_argument);
}

TEST_CASE("gram determinant expectation equals the permanent (tall random case)") {
  std::mt19937_64 rng(31);
  const Eigen::MatrixXd q = support::random_matrix(rng, 4, 2, 0.2, 1.5);
  const auto est = expected_gram_det_oracle(q, 60000, 17);
  CHECK(std::abs(est.estimate - perm_rect(q)) <= 3.0 * est.std_error);
}

TEST_CASE("diagonal-weighted gram determinant matches Perm(Sigma A)") {
  // Test-side Monte Carlo of E{|X^H Sigma X|} with X ~ CN(0, A) entrywise.
  std::mt19937_64 rng(47);
  const Eigen::MatrixXd a = support::random_matrix(rng, 4, 2, 0.2, 1.5);
  const Eigen::VectorXd sigma = support::random_matrix(rng, 4, 1, 0.0, 2.0);
  std::vector<double> dets;
  dets.reserve(60000);
  for (int i = 0; i < 60000; ++i) {
    const Eigen::MatrixXcd x = support::gaussian_matrix(rng, a);
    dets.push_back((x.adjoint() * sigma.asDiagonal() * x).determinant().real());
  }
  const auto [mean, se] = support::mean_stderr(dets);
  const double expected = perm_rect(sigma.asDiagonal() * a);
  CHECK(std::abs(mean - expected) <= 3.0 * se);
}

TEST_SUITE_END();
