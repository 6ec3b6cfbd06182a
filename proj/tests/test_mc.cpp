// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "macrodiv/mc.hpp"
#include "macrodiv/mmse_analysis.hpp"
#include "macrodiv/zf_analysis.hpp"
#include "support.hpp"

using namespace macrodiv;

TEST_SUITE_BEGIN("mc");

namespace {

// Interference-plus-noise inverse built by Sherman-Morrison rank-1 updates;
// shares no linear algebra with the solve-based implementation.
double sinr_rank1_oracle(const Eigen::MatrixXcd& h, double s2, int user) {
  const Eigen::Index n_r = h.rows();
  Eigen::MatrixXcd inv = Eigen::MatrixXcd::Identity(n_r, n_r) / s2;
  for (Eigen::Index k = 0; k < h.cols(); ++k) {
    if (k == user) continue;
    const Eigen::VectorXcd u = h.col(k);
    const Eigen::VectorXcd iu = inv * u;
    const std::complex<double> denom = 1.0 + u.dot(iu);
    inv -= (iu * iu.adjoint()) / denom;
  }
  return h.col(user).dot(inv * h.col(user)).real();
}

}  // namespace

TEST_CASE("sample_channel determinism and zero-power entries") {
  Eigen::MatrixXd p(2, 2);
  p << 1.0, 0.0, 0.0, 2.0;
  const PowerProfile profile(p);
  const ChannelRealization a = sample_channel(profile, 42, 7);
  const ChannelRealization b = sample_channel(profile, 42, 7);
  CHECK(a.h == b.h);
  CHECK(a.h(0, 1) == std::complex<double>(0.0, 0.0));
  CHECK(a.h(1, 0) == std::complex<double>(0.0, 0.0));
  const ChannelRealization c = sample_channel(profile, 42, 8);
  CHECK(a.h != c.h);
}

TEST_CASE("sample variance of |H_ik|^2 recovers P_ik") {
  std::mt19937_64 rng(1);
  const PowerProfile profile = support::random_profile(rng, 2, 2);
  const int nmc = 20000;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(2, 2);
  std::vector<double> h00(nmc);
  for (int i = 0; i < nmc; ++i) {
    const ChannelRealization chan = sample_channel(profile, 5, static_cast<std::uint64_t>(i));
    acc += chan.h.cwiseAbs2();
    h00[static_cast<size_t>(i)] = std::norm(chan.h(0, 0));
  }
  const auto [mean, se] = support::mean_stderr(h00);
  CHECK(std::abs(mean - profile.p()(0, 0)) <= 3.0 * se);
  CHECK(((acc / nmc) - profile.p()).cwiseAbs().maxCoeff() < 0.1);
}

TEST_CASE("receiver statistics on constructed channels") {
  const double s2 = 0.3;

  // Single user: both receivers reduce to MRC.
  Eigen::MatrixXcd h1(3, 1);
  h1 << std::complex<double>(1, 2), std::complex<double>(0, -1), std::complex<double>(0.5, 0);
  const ChannelRealization solo{h1};
  const double mrc = h1.col(0).squaredNorm() / s2;
  CHECK(mmse_sinr(solo, s2, 0) == doctest::Approx(mrc).epsilon(1e-12));
  CHECK(zf_snr(solo, s2, 0) == doctest::Approx(mrc).epsilon(1e-12));

  // Orthogonal interferer: nulling costs nothing and MMSE = ZF = MRC.
  Eigen::MatrixXcd h2(2, 2);
  h2 << std::complex<double>(2, 0), std::complex<double>(0, 0),
        std::complex<double>(0, 0), std::complex<double>(0, 3);
  const ChannelRealization ortho{h2};
  const double expect = std::norm(h2(0, 0)) / s2;
  CHECK(mmse_sinr(ortho, s2, 0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(zf_snr(ortho, s2, 0) == doctest::Approx(expect).epsilon(1e-12));

  // Duplicated columns: the Gram matrix is singular.
  Eigen::MatrixXcd dup(3, 2);
  dup.col(0) << 1.0, 2.0, 3.0;
  dup.col(1) = dup.col(0);
  CHECK_THROWS_AS(zf_snr(ChannelRealization{dup}, s2, 0), SingularChannelError);
}

TEST_CASE("solve route agrees with oracles and MMSE dominates ZF") {
  std::mt19937_64 rng(9);
  const PowerProfile profile = support::random_profile(rng, 4, 3);
  const double s2 = 0.6;
  for (int i = 0; i < 10000; ++i) {
    const ChannelRealization chan = sample_channel(profile, 31, static_cast<std::uint64_t>(i));
    const double mmse = mmse_sinr(chan, s2, 0);
    const double zf = zf_snr(chan, s2, 0);
    if (i < 200) {
      CHECK(mmse == doctest::Approx(sinr_rank1_oracle(chan.h, s2, 0)).epsilon(1e-10));
      CHECK(zf == doctest::Approx(zf_snr_projection(chan, s2, 0)).epsilon(1e-9));
    }
    CHECK(mmse >= zf * (1.0 - 1e-9));
  }
}

TEST_CASE("ZF samples halve exactly when the noise power doubles") {
  std::mt19937_64 rng(11);
  const PowerProfile profile = support::random_profile(rng, 3, 2);
  for (int i = 0; i < 50; ++i) {
    const ChannelRealization chan = sample_channel(profile, 3, static_cast<std::uint64_t>(i));
    const double snr1 = zf_snr(chan, 0.4, 0);
    const double snr2 = zf_snr(chan, 0.8, 0);
    CHECK(snr2 == 0.5 * snr1);  // bitwise, not approximately
  }
}

TEST_CASE("empirical distribution bookkeeping") {
  EmpiricalDistribution d(std::vector<double>{3.0, 1.0, 2.0}, 1);
  CHECK(d.sorted_samples() == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(d.count() == 3);
  CHECK(d.discarded() == 1);
  CHECK(d.cdf(0.5) == 0.0);
  CHECK(d.cdf(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(d.cdf(10.0) == 1.0);
  CHECK(d.mean() == doctest::Approx(2.0));
  CHECK(d.quantile(0.0) == 1.0);
  CHECK(d.quantile(1.0) == 3.0);
  // K-S against the true uniform-on-samples CDF shape
  const double ks = d.ks_distance([](double x) { return std::min(1.0, std::max(0.0, x / 3.0)); });
  CHECK(ks == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("flat-profile ZF empirical law is Erlang") {
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(4, 2, 0.8);
  const PowerProfile profile(p);
  const double s2 = 0.4;
  const EmpiricalDistribution emp = empirical_cdf(profile, Receiver::Zf, 0, s2, 100000, 17);
  CHECK(emp.discarded() == 0);
  const double rate = s2 / 0.8;
  const double ks =
      emp.ks_distance([&](double z) { return support::erlang_cdf(3, rate, z); });
  CHECK(ks <= 0.01);
}

TEST_CASE("MMSE sample mean dominates ZF sample mean") {
  const PowerProfile pm = normalize_columns(builtin_profile("P_M"));
  const double s2 = 0.2;
  const EmpiricalDistribution mmse = empirical_cdf(pm, Receiver::Mmse, 0, s2, 20000, 5);
  const EmpiricalDistribution zf = empirical_cdf(pm, Receiver::Zf, 0, s2, 20000, 5);
  CHECK(mmse.mean() >= zf.mean());
}

TEST_CASE("empirical runs are reproducible and worker-count invariant") {
  std::mt19937_64 rng(21);
  const PowerProfile profile = support::random_profile(rng, 3, 2);

  setenv("MACRODIV_THREADS", "1", 1);
  const EmpiricalDistribution serial = empirical_cdf(profile, Receiver::Mmse, 0, 0.5, 20000, 9);
  setenv("MACRODIV_THREADS", "7", 1);
  const EmpiricalDistribution parallel = empirical_cdf(profile, Receiver::Mmse, 0, 0.5, 20000, 9);
  const SerEstimate ser_a =
      semi_analytic_ser(profile, Receiver::Zf, 0, 0.5, ModulationSpec::mpsk(4), 20000, 9);
  setenv("MACRODIV_THREADS", "3", 1);
  const SerEstimate ser_b =
      semi_analytic_ser(profile, Receiver::Zf, 0, 0.5, ModulationSpec::mpsk(4), 20000, 9);
  unsetenv("MACRODIV_THREADS");

  CHECK(serial.sorted_samples() == parallel.sorted_samples());
  CHECK(ser_a.ser == ser_b.ser);
  CHECK(ser_a.std_error == ser_b.std_error);
}

TEST_CASE("semi-analytic SER matches the single-branch closed form") {
  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  const PowerProfile profile(one);
  const double gbar = 10.0;
  const SerEstimate est = semi_analytic_ser(profile, Receiver::Mmse, 0, 1.0 / gbar,
                                            ModulationSpec::mpsk(2), 20000, 13);
  CHECK(std::abs(est.ser - support::bpsk_rayleigh_ser(gbar)) <= 3.0 * est.std_error);

  // Vanishing noise drives the SER to zero.
  const SerEstimate tiny = semi_analytic_ser(profile, Receiver::Mmse, 0, 1e-9,
                                             ModulationSpec::mpsk(2), 2000, 13);
  CHECK(tiny.ser < 1e-6);
}

TEST_CASE("symmetric profile gives statistically equal per-user SER") {
  const PowerProfile pp = normalize_columns(builtin_profile("P_P"));
  const ModulationSpec qpsk = ModulationSpec::mpsk(4);
  const double s2 = 0.1;
  const SerEstimate u0 = semi_analytic_ser(pp, Receiver::Zf, 0, s2, qpsk, 20000, 7);
  const SerEstimate u1 = semi_analytic_ser(pp, Receiver::Zf, 1, s2, qpsk, 20000, 7);
  const double se = std::hypot(u0.std_error, u1.std_error);
  CHECK(std::abs(u0.ser - u1.ser) <= 3.0 * se);
}

TEST_CASE("mixture SER tracks the semi-analytic SER on a generated drop") {
  const PowerProfile profile = generate_drop(Scenario::edge_excited_cell(3, 1), 1);
  const UserView v = user_view(profile, 0);
  const ModulationSpec qpsk = ModulationSpec::mpsk(4);
  for (double gbar_db : {-10.0, -5.0, 0.0}) {  // SER between ~1e-2 and ~1e-3 here
    const double s2 = std::pow(10.0, -gbar_db / 10.0);
    for (Receiver receiver : {Receiver::Mmse, Receiver::Zf}) {
      const ExponentialMixture mix = receiver == Receiver::Mmse ? mmse_mixture(v, s2)
                                                                : zf_mixture(v, s2);
      const double approx = ser_from_mixture(mix, qpsk);
      const SerEstimate mc = semi_analytic_ser(profile, receiver, 0, s2, qpsk, 50000, 19);
      CHECK(approx <= 2e-2);
      CHECK(std::abs(approx - mc.ser) <= 0.2 * mc.ser + 3.0 * mc.std_error);
    }
  }
}

TEST_CASE("running mean stabilizes between half and full sample budget") {
  std::mt19937_64 rng(23);
  const PowerProfile profile = support::random_profile(rng, 3, 3);
  const EmpiricalDistribution half = empirical_cdf(profile, Receiver::Mmse, 0, 0.5, 50000, 3);
  const EmpiricalDistribution full = empirical_cdf(profile, Receiver::Mmse, 0, 0.5, 100000, 3);
  CHECK(std::abs(half.mean() - full.mean()) / full.mean() < 0.01);
}

TEST_SUITE_END();
