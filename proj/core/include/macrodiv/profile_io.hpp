// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#pragma once

#include <iosfwd>
#include <string>

#include "macrodiv/power_profile.hpp"

namespace macrodiv {

// File formats. Both are single JSON objects with a "format" version tag:
//   macrodiv-profile-v1:  { "format", "n_r", "n", "p": [[...], ...] }
//   macrodiv-scenario-v1: { "format", "bs_positions", "antennas_per_bs",
//                           "user_region", "users", "shadowing_std_db",
//                           "pathloss_exponent", "calibration", "cell_radius" }
// Scenario fields other than "format" and "users" may be omitted and then
// take the edge-excited-cell defaults.

inline constexpr const char* kProfileFormat = "macrodiv-profile-v1";
inline constexpr const char* kScenarioFormat = "macrodiv-scenario-v1";

std::string profile_to_json(const PowerProfile& profile);
PowerProfile profile_from_json(const std::string& text);
void save_profile(const PowerProfile& profile, const std::string& path);
PowerProfile load_profile(const std::string& path);

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);
void save_scenario(const Scenario& scenario, const std::string& path);
Scenario load_scenario(const std::string& path);

}  // namespace macrodiv
