// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <cstdint>

namespace macrodiv::detail {

// splitmix64 finalizer. This is the documented mixing function used to derive
// independent substreams: stream s of run `seed` is seeded with
// mix64(seed, s), so merged results do not depend on worker scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xD1342543DE82EF95ull + 1));
}

}  // namespace macrodiv::detail
