// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "macrodiv/errors.hpp"
#include "macrodiv/profile_io.hpp"

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/macrodiv_cli_test_") + name;
}

int run_binary(const std::string& args, const std::string& stdout_path) {
  const std::string cmd =
      std::string(MACRODIV_CLI_PATH) + " " + args + " > " + stdout_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("metric command succeeds and prints the expected header") {
  const std::string out = temp_path("metric.csv");
  CHECK(run_binary("metric --builtin P_D4", out) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("user,zf_k0,diversity,zf_array_gain,mmse_array_gain\n", 0) == 0);
  CHECK(text.find("\n1,1.34") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
  const std::string out = temp_path("err.txt");
  // no profile source
  CHECK(run_binary("metric", out) == 2);
  // two profile sources
  CHECK(run_binary("metric --builtin P_M --profile /nonexistent.json", out) == 2);
  // unknown builtin
  CHECK(run_binary("metric --builtin P_Z", out) == 2);
  // user out of range
  CHECK(run_binary("analyze --builtin P_M --user 9 --noise-db 0", out) == 2);
  // bad sweep
  CHECK(run_binary("ser --builtin P_M --snr-db 10:-1:20", out) == 2);
  // more users than antennas
  CHECK(run_binary("drop --users 5 --antennas-per-bs 1", out) == 2);
  // unknown flag (parser error)
  CHECK(run_binary("metric --builtin P_M --frobnicate", out) == 2);
}

TEST_CASE("exception classes map to the documented exit codes") {
  using namespace macrodiv;
  const auto code_for = [](auto&& make_exception) {
    try {
      throw make_exception();
    } catch (...) {
      return cli::exit_code_for_current_exception();
    }
  };
  CHECK(code_for([] { return DegenerateRootsError("x", {}); }) == 3);
  CHECK(code_for([] { return QuadratureError("x", 1e-3); }) == 3);
  CHECK(code_for([] { return NumericalError("x"); }) == 3);
  CHECK(code_for([] { return FormatError("x"); }) == 2);
  CHECK(code_for([] { return SingularProfileError("x"); }) == 2);
  CHECK(code_for([] { return std::invalid_argument("x"); }) == 2);
  CHECK(code_for([] { return std::runtime_error("x"); }) == 1);
}

TEST_CASE("outputs are byte-stable across repeated runs") {
  const std::string a = temp_path("ser_a.csv");
  const std::string b = temp_path("ser_b.csv");
  const std::string args =
      "ser --builtin P_D4 --receiver mmse --user 2 --snr-db 0:10:30 --mod qpsk --seed 11";
  CHECK(run_binary(args, a) == 0);
  CHECK(run_binary(args, b) == 0);
  CHECK(slurp(a) == slurp(b));

  const std::string da = temp_path("drop_a.json");
  const std::string db = temp_path("drop_b.json");
  CHECK(run_binary("drop --users 4 --antennas-per-bs 2 --seed 7 --out " + da,
                   temp_path("drop_log_a.txt")) == 0);
  CHECK(run_binary("drop --users 4 --antennas-per-bs 2 --seed 7 --out " + db,
                   temp_path("drop_log_b.txt")) == 0);
  CHECK(slurp(da) == slurp(db));

  // The generated profile is a valid macrodiv-profile-v1 with duplicated
  // per-site rows.
  const macrodiv::PowerProfile drop = macrodiv::load_profile(da);
  CHECK(drop.n_r() == 6);
  CHECK(drop.n() == 4);
  CHECK(drop.p().row(0) == drop.p().row(1));
}

TEST_CASE("analyze emits the documented columns and a K-S summary row") {
  const std::string out = temp_path("analyze.csv");
  CHECK(run_binary("analyze --builtin P_M --receiver zf --user 1 --noise-db -10 "
                   "--samples 5000 --seed 3",
                   out) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("z,pdf_approx,cdf_approx,cdf_empirical\n", 0) == 0);
  CHECK(text.find("\nks_distance,") != std::string::npos);

  // Without samples the empirical column and summary disappear.
  const std::string out2 = temp_path("analyze_nosamples.csv");
  CHECK(run_binary("analyze --builtin P_M --receiver zf --user 1 --noise-db -10", out2) == 0);
  const std::string text2 = slurp(out2);
  CHECK(text2.rfind("z,pdf_approx,cdf_approx\n", 0) == 0);
  CHECK(text2.find("ks_distance") == std::string::npos);
}

TEST_CASE("object format is valid JSON mirroring the table") {
  const std::string out = temp_path("table.json");
  CHECK(run_binary("compare --builtin P_P --normalize --snr-db 10:5:15 --mod qpsk "
                   "--format object",
                   out) == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j["format"] == "macrodiv-table-v1");
  CHECK(j["command"] == "compare");
  REQUIRE(j["columns"].is_array());
  CHECK(j["columns"].size() == 7);  // snr_db + 3 zf + 3 mmse
  CHECK(j["rows"].size() == 2);
  CHECK(j["summary"].contains("ordering_match"));
  CHECK(j["summary"]["ordering_match"] == 1.0);
}

TEST_CASE("single-point sweep produces a single row") {
  const std::string out = temp_path("ser_single.csv");
  CHECK(run_binary("ser --builtin P_P --normalize --receiver zf --snr-db 15 --mod qpsk",
                   out) == 0);
  const std::string text = slurp(out);
  int newlines = 0;
  for (char c : text) newlines += c == '\n';
  // header + one data row + two summary rows
  CHECK(newlines == 4);
}

TEST_CASE("simulate emits the empirical CDF with summary statistics") {
  const std::string out = temp_path("simulate.csv");
  CHECK(run_binary("simulate --builtin P_M --receiver mmse --user 1 --noise-db 0 "
                   "--samples 5000 --seed 2",
                   out) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("z,cdf_empirical\n", 0) == 0);
  CHECK(text.find("\nmean,") != std::string::npos);
  CHECK(text.find("\ncount,5000") != std::string::npos);
  CHECK(run_binary("simulate --builtin P_M --receiver mmse --user 1 --noise-db 0", out) == 2);
}

TEST_CASE("in-process run handles a scenario file end to end") {
  const std::string scen = temp_path("scenario.json");
  {
    std::ofstream f(scen);
    f << macrodiv::scenario_to_json(macrodiv::Scenario::edge_excited_cell(3, 1));
  }
  const std::string out = temp_path("drop_from_spec.json");
  CHECK(macrodiv::cli::run({"drop", "--drop-spec", scen, "--seed", "5", "--out", out}) == 0);
  const macrodiv::PowerProfile p = macrodiv::load_profile(out);
  CHECK(p.n_r() == 3);
  CHECK(p.n() == 3);

  CHECK(macrodiv::cli::run({"metric", "--profile", out, "--format", "object",
                            "--out", temp_path("metric_drop.json")}) == 0);
}
