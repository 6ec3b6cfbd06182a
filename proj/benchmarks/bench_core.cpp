// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include <benchmark/benchmark.h>

#include <random>

#include "macrodiv/linalg.hpp"
#include "macrodiv/mc.hpp"
#include "macrodiv/mmse_analysis.hpp"
#include "macrodiv/power_profile.hpp"
#include "macrodiv/ser.hpp"
#include "macrodiv/zf_analysis.hpp"

using namespace macrodiv;

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.1, 2.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  }
  return m;
}

void BM_PermSquare(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd a = random_matrix(n, n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(perm_square(a));
  }
}
BENCHMARK(BM_PermSquare)->DenseRange(6, 14, 2);

void BM_ZfMixture(benchmark::State& state) {
  const PowerProfile pd4 = builtin_profile("P_D4");
  const UserView v = user_view(pd4, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(zf_mixture(v, 0.01));
  }
}
BENCHMARK(BM_ZfMixture);

void BM_MmseMixture(benchmark::State& state) {
  const PowerProfile pd4 = builtin_profile("P_D4");
  const UserView v = user_view(pd4, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmse_mixture(v, 0.01));
  }
}
BENCHMARK(BM_MmseMixture);

void BM_SerFromMixture(benchmark::State& state) {
  const PowerProfile pd4 = builtin_profile("P_D4");
  const ExponentialMixture mix = mmse_mixture(user_view(pd4, 0), 0.01);
  const ModulationSpec qpsk = ModulationSpec::mpsk(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ser_from_mixture(mix, qpsk));
  }
}
BENCHMARK(BM_SerFromMixture);

void BM_MmseSinrDraw(benchmark::State& state) {
  const PowerProfile pd4 = builtin_profile("P_D4");
  std::uint64_t index = 0;
  for (auto _ : state) {
    const ChannelRealization chan = sample_channel(pd4, 7, index++);
    benchmark::DoNotOptimize(mmse_sinr(chan, 0.1, 0));
  }
}
BENCHMARK(BM_MmseSinrDraw);

void BM_ZfSnrDraw(benchmark::State& state) {
  const PowerProfile pd4 = builtin_profile("P_D4");
  std::uint64_t index = 0;
  for (auto _ : state) {
    const ChannelRealization chan = sample_channel(pd4, 7, index++);
    benchmark::DoNotOptimize(zf_snr(chan, 0.1, 0));
  }
}
BENCHMARK(BM_ZfSnrDraw);

void BM_GenerateDrop(benchmark::State& state) {
  const Scenario scenario = Scenario::edge_excited_cell(4, 2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_drop(scenario, seed++));
  }
}
BENCHMARK(BM_GenerateDrop);

}  // namespace

BENCHMARK_MAIN();
