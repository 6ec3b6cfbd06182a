// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <string>
#include <vector>

namespace macrodiv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalDegeneracy = 3;

/// Parses and runs one invocation; returns the process exit code.
int run(const std::vector<std::string>& args);

/// Exit code for the exception currently being handled: config/input
/// problems map to 2, numerical degeneracy (repeated roots, quadrature
/// failure) to 3, anything else to 1.
int exit_code_for_current_exception();

}  // namespace macrodiv::cli
