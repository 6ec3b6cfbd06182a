// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include "macrodiv/mc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "macrodiv/rng.hpp"

namespace macrodiv {

Receiver receiver_from_string(std::string_view name) {
  if (name == "mmse") return Receiver::Mmse;
  if (name == "zf") return Receiver::Zf;
  throw FormatError("receiver_from_string: expected 'mmse' or 'zf', got '" +
                    std::string(name) + "'");
}

std::string_view to_string(Receiver r) {
  return r == Receiver::Mmse ? "mmse" : "zf";
}

ChannelRealization sample_channel(const PowerProfile& profile, std::uint64_t seed,
                                  std::uint64_t index) {
  std::mt19937_64 engine(detail::mix64(seed, index));
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::MatrixXd& p = profile.p();
  Eigen::MatrixXcd h(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index k = 0; k < p.cols(); ++k) {
      const double amp = std::sqrt(p(i, k) / 2.0);
      const double re = normal(engine);
      const double im = normal(engine);
      h(i, k) = std::complex<double>(amp * re, amp * im);
    }
  }
  return {std::move(h)};
}

double mmse_sinr(const ChannelRealization& chan, double noise_variance, int user) {
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("mmse_sinr: noise variance must be > 0");
  }
  const Eigen::MatrixXcd& h = chan.h;
  if (user < 0 || user >= h.cols()) throw std::out_of_range("mmse_sinr: bad user index");
  const Eigen::Index n_r = h.rows();
  Eigen::MatrixXcd r = noise_variance * Eigen::MatrixXcd::Identity(n_r, n_r);
  for (Eigen::Index k = 0; k < h.cols(); ++k) {
    if (k == user) continue;
    r.noalias() += h.col(k) * h.col(k).adjoint();
  }
  const Eigen::VectorXcd x = r.llt().solve(h.col(user));
  return h.col(user).dot(x).real();
}

double zf_snr(const ChannelRealization& chan, double noise_variance, int user) {
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("zf_snr: noise variance must be > 0");
  }
  const Eigen::MatrixXcd& h = chan.h;
  if (user < 0 || user >= h.cols()) throw std::out_of_range("zf_snr: bad user index");
  if (h.rows() < h.cols()) throw DimensionError("zf_snr: needs n_r >= n");

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (!(smin > 0.0) || (smax / smin) * (smax / smin) > 1e12) {
    throw SingularChannelError("zf_snr: channel Gram matrix conditioning exceeds 1e12");
  }

  const Eigen::MatrixXcd gram = h.adjoint() * h;
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(h.cols());
  e(user) = 1.0;
  const Eigen::VectorXcd x = gram.ldlt().solve(e);
  return 1.0 / (noise_variance * x(user).real());
}

double zf_snr_projection(const ChannelRealization& chan, double noise_variance, int user) {
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("zf_snr_projection: noise variance must be > 0");
  }
  const Eigen::MatrixXcd& h = chan.h;
  if (user < 0 || user >= h.cols()) throw std::out_of_range("zf_snr_projection: bad user index");
  const Eigen::Index n = h.cols();
  Eigen::MatrixXcd h2(h.rows(), n - 1);
  Eigen::Index out = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == user) continue;
    h2.col(out++) = h.col(k);
  }
  const Eigen::VectorXcd hu = h.col(user);
  if (n == 1) return hu.squaredNorm() / noise_variance;
  const Eigen::VectorXcd h2hu = h2.adjoint() * hu;
  const Eigen::VectorXcd y = (h2.adjoint() * h2).ldlt().solve(h2hu);
  return (hu.squaredNorm() - h2hu.dot(y).real()) / noise_variance;
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples,
                                             std::int64_t discarded)
    : samples_(std::move(samples)), discarded_(discarded) {
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::cdf(double x) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::mean() const {
  double sum = 0.0;
  for (double v : samples_) sum += v;
  return sum / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("EmpiricalDistribution::quantile: need 0 <= p <= 1");
  }
  if (samples_.empty()) throw std::logic_error("quantile of empty distribution");
  const auto idx = static_cast<size_t>(p * static_cast<double>(samples_.size() - 1));
  return samples_[idx];
}

double EmpiricalDistribution::ks_distance(
    const std::function<double(double)>& reference_cdf) const {
  const double n = static_cast<double>(samples_.size());
  double d = 0.0;
  for (size_t i = 0; i < samples_.size(); ++i) {
    const double f = reference_cdf(samples_[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

int worker_count() {
  if (const char* env = std::getenv("MACRODIV_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

constexpr std::int64_t kBlockSize = 8192;

// Runs body(index, block) over 0..samples-1 partitioned into fixed-size
// blocks. Blocks are assigned to workers dynamically but each block's indices
// run sequentially and per-block state is merged in block order, so results
// do not depend on the worker count.
void blocked_run(std::int64_t samples,
                 const std::function<void(std::int64_t, std::int64_t)>& body) {
  const std::int64_t nblocks = (samples + kBlockSize - 1) / kBlockSize;
  const int workers = std::min<std::int64_t>(worker_count(), nblocks);
  if (workers <= 1) {
    for (std::int64_t b = 0; b < nblocks; ++b) {
      const std::int64_t hi = std::min(samples, (b + 1) * kBlockSize);
      for (std::int64_t i = b * kBlockSize; i < hi; ++i) body(i, b);
    }
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::int64_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1)) {
        const std::int64_t hi = std::min(samples, (b + 1) * kBlockSize);
        for (std::int64_t i = b * kBlockSize; i < hi; ++i) body(i, b);
      }
    });
  }
  for (auto& t : pool) t.join();
}

double receiver_statistic(Receiver receiver, const ChannelRealization& chan,
                          double noise_variance, int user) {
  return receiver == Receiver::Mmse ? mmse_sinr(chan, noise_variance, user)
                                    : zf_snr(chan, noise_variance, user);
}

}  // namespace

EmpiricalDistribution empirical_cdf(const PowerProfile& profile, Receiver receiver,
                                    int user, double noise_variance,
                                    std::int64_t samples, std::uint64_t seed) {
  if (samples < 1000) {
    throw std::invalid_argument("empirical_cdf: need at least 1000 samples");
  }
  if (user < 0 || user >= profile.n()) throw std::out_of_range("empirical_cdf: bad user");
  const std::int64_t nblocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<std::vector<double>> block_values(static_cast<size_t>(nblocks));
  std::vector<std::int64_t> block_discards(static_cast<size_t>(nblocks), 0);

  blocked_run(samples, [&](std::int64_t index, std::int64_t block) {
    const ChannelRealization chan = sample_channel(profile, seed, static_cast<std::uint64_t>(index));
    try {
      block_values[static_cast<size_t>(block)].push_back(
          receiver_statistic(receiver, chan, noise_variance, user));
    } catch (const SingularChannelError&) {
      ++block_discards[static_cast<size_t>(block)];
    }
  });

  std::vector<double> values;
  values.reserve(static_cast<size_t>(samples));
  std::int64_t discards = 0;
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const auto& blk = block_values[static_cast<size_t>(b)];
    values.insert(values.end(), blk.begin(), blk.end());
    discards += block_discards[static_cast<size_t>(b)];
  }
  return EmpiricalDistribution(std::move(values), discards);
}

SerEstimate semi_analytic_ser(const PowerProfile& profile, Receiver receiver, int user,
                              double noise_variance, const ModulationSpec& mod,
                              std::int64_t samples, std::uint64_t seed) {
  if (samples < 1000) {
    throw std::invalid_argument("semi_analytic_ser: need at least 1000 samples");
  }
  if (user < 0 || user >= profile.n()) throw std::out_of_range("semi_analytic_ser: bad user");
  const std::int64_t nblocks = (samples + kBlockSize - 1) / kBlockSize;
  struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t count = 0;
  };
  std::vector<Moments> block_moments(static_cast<size_t>(nblocks));

  blocked_run(samples, [&](std::int64_t index, std::int64_t block) {
    const ChannelRealization chan = sample_channel(profile, seed, static_cast<std::uint64_t>(index));
    double sep = 0.0;
    try {
      sep = conditional_sep(receiver_statistic(receiver, chan, noise_variance, user), mod);
    } catch (const SingularChannelError&) {
      return;  // discarded draw
    }
    Moments& m = block_moments[static_cast<size_t>(block)];
    m.sum += sep;
    m.sum_sq += sep * sep;
    m.count += 1;
  });

  double sum = 0.0, sum_sq = 0.0;
  std::int64_t count = 0;
  for (const Moments& m : block_moments) {
    sum += m.sum;
    sum_sq += m.sum_sq;
    count += m.count;
  }
  const double n = static_cast<double>(count);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

}  // namespace macrodiv
