// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include "macrodiv/profile_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace macrodiv {

namespace {

using nlohmann::json;

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw FormatError(std::string(what) + ": not a JSON object");
  }
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
  if (!out) throw FormatError("write to '" + path + "' failed");
}

std::vector<Eigen::Vector2d> points_from_json(const json& arr, const char* field) {
  if (!arr.is_array()) throw FormatError(std::string(field) + " must be an array of [x, y]");
  std::vector<Eigen::Vector2d> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2) {
      throw FormatError(std::string(field) + " must be an array of [x, y]");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

json points_to_json(const std::vector<Eigen::Vector2d>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({p.x(), p.y()});
  return arr;
}

}  // namespace

std::string profile_to_json(const PowerProfile& profile) {
  json j;
  j["format"] = kProfileFormat;
  j["n_r"] = profile.n_r();
  j["n"] = profile.n();
  json rows = json::array();
  for (int i = 0; i < profile.n_r(); ++i) {
    json row = json::array();
    for (int k = 0; k < profile.n(); ++k) row.push_back(profile.p()(i, k));
    rows.push_back(std::move(row));
  }
  j["p"] = std::move(rows);
  return j.dump(2) + "\n";
}

PowerProfile profile_from_json(const std::string& text) {
  const json j = parse(text, "profile");
  if (j.value("format", "") != kProfileFormat) {
    throw FormatError("profile: expected format '" + std::string(kProfileFormat) + "'");
  }
  if (!j.contains("n_r") || !j.contains("n") || !j.contains("p")) {
    throw FormatError("profile: missing n_r, n or p");
  }
  const int n_r = j["n_r"].get<int>();
  const int n = j["n"].get<int>();
  const json& rows = j["p"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n_r) {
    throw FormatError("profile: p must have n_r rows");
  }
  Eigen::MatrixXd p(n_r, n);
  for (int i = 0; i < n_r; ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw FormatError("profile: row " + std::to_string(i + 1) + " must have n entries");
    }
    for (int k = 0; k < n; ++k) p(i, k) = row[static_cast<size_t>(k)].get<double>();
  }
  try {
    return PowerProfile(std::move(p));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("profile: ") + e.what());
  }
}

void save_profile(const PowerProfile& profile, const std::string& path) {
  write_file(path, profile_to_json(profile));
}

PowerProfile load_profile(const std::string& path) {
  return profile_from_json(read_file(path));
}

std::string scenario_to_json(const Scenario& scenario) {
  json j;
  j["format"] = kScenarioFormat;
  j["bs_positions"] = points_to_json(scenario.bs_positions);
  j["antennas_per_bs"] = scenario.antennas_per_bs;
  j["user_region"] = points_to_json(scenario.user_region);
  j["users"] = scenario.users;
  j["shadowing_std_db"] = scenario.shadowing_std_db;
  j["pathloss_exponent"] = scenario.pathloss_exponent;
  j["calibration"] = {{"threshold_db", scenario.calibration.threshold_db},
                      {"quantile", scenario.calibration.quantile}};
  j["cell_radius"] = scenario.cell_radius;
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  const json j = parse(text, "scenario");
  if (j.value("format", "") != kScenarioFormat) {
    throw FormatError("scenario: expected format '" + std::string(kScenarioFormat) + "'");
  }
  Scenario s = Scenario::edge_excited_cell(j.value("users", 3),
                                           j.value("antennas_per_bs", 1),
                                           j.value("cell_radius", 1.0));
  if (j.contains("bs_positions")) s.bs_positions = points_from_json(j["bs_positions"], "bs_positions");
  if (j.contains("user_region")) s.user_region = points_from_json(j["user_region"], "user_region");
  s.shadowing_std_db = j.value("shadowing_std_db", 8.0);
  s.pathloss_exponent = j.value("pathloss_exponent", 3.5);
  if (j.contains("calibration")) {
    const json& c = j["calibration"];
    s.calibration.threshold_db = c.value("threshold_db", 3.0);
    s.calibration.quantile = c.value("quantile", 0.95);
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("scenario: ") + e.what());
  }
  return s;
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  write_file(path, scenario_to_json(scenario));
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(read_file(path));
}

}  // namespace macrodiv
