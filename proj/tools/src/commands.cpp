// SPDX-License-Identifier: Apache-2.0
//
// macrodiv: SINR/SNR distributions and symbol error rates for linear
// receivers over channels with per-link average powers.

#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "macrodiv/mc.hpp"
#include "macrodiv/mixture.hpp"
#include "macrodiv/mmse_analysis.hpp"
#include "macrodiv/power_profile.hpp"
#include "macrodiv/profile_io.hpp"
#include "macrodiv/ser.hpp"
#include "macrodiv/zf_analysis.hpp"

namespace macrodiv::cli {

namespace {

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct SummaryEntry {
  std::string name;
  std::string text;          // used when numeric is unset
  std::optional<double> num;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<SummaryEntry> summary;

  void add_summary(std::string name, double v) { summary.push_back({std::move(name), "", v}); }
  void add_summary(std::string name, std::string text) {
    summary.push_back({std::move(name), std::move(text), std::nullopt});
  }
};

void write_csv(const Table& t, std::ostream& out) {
  for (size_t c = 0; c < t.columns.size(); ++c) {
    out << (c ? "," : "") << t.columns[c];
  }
  out << "\n";
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << fmt17(row[c]);
    out << "\n";
  }
  for (const auto& s : t.summary) {
    out << s.name << "," << (s.num ? fmt17(*s.num) : s.text) << "\n";
  }
}

void write_object(const Table& t, const std::string& command, std::ostream& out) {
  nlohmann::json j;
  j["format"] = "macrodiv-table-v1";
  j["command"] = command;
  j["columns"] = t.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) rows.push_back(row);
  j["rows"] = std::move(rows);
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& s : t.summary) {
    if (s.num) {
      summary[s.name] = *s.num;
    } else {
      summary[s.name] = s.text;
    }
  }
  j["summary"] = std::move(summary);
  out << j.dump(2) << "\n";
}

void emit(const Table& t, const std::string& command, const std::string& format,
          const std::string& out_path) {
  std::ostringstream buf;
  if (format == "csv") {
    write_csv(t, buf);
  } else if (format == "object") {
    write_object(t, command, buf);
  } else {
    throw ConfigError("unknown output format '" + format + "'");
  }
  if (out_path.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream f(out_path);
    if (!f) throw ConfigError("cannot write output file '" + out_path + "'");
    f << buf.str();
  }
}

struct CommonOptions {
  std::string profile_path;
  std::string builtin;
  std::string drop_spec;
  int drop_users = 3;
  int drop_antennas = 1;
  bool normalize = false;
  int user = 1;  // 1-based on the command line
  std::string receiver = "mmse";
  double noise_db = std::nan("");
  std::string snr_sweep;
  std::string modulation = "qpsk";
  std::int64_t samples = 0;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "csv";
};

void add_profile_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--profile", o.profile_path, "power profile file (macrodiv-profile-v1)");
  cmd->add_option("--builtin", o.builtin, "built-in profile: P_M, P_P or P_D4");
  cmd->add_option("--drop-spec", o.drop_spec, "scenario file (macrodiv-scenario-v1); generates a drop with --seed");
  cmd->add_flag("--normalize", o.normalize, "normalize profile columns to unit sum");
}

void add_output_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--out", o.out_path, "output path (default: stdout)");
  cmd->add_option("--format", o.format, "csv or object")->check(CLI::IsMember({"csv", "object"}));
}

PowerProfile resolve_profile(const CommonOptions& o) {
  const int sources = (!o.profile_path.empty()) + (!o.builtin.empty()) + (!o.drop_spec.empty());
  if (sources != 1) {
    throw ConfigError("exactly one of --profile, --builtin, --drop-spec is required");
  }
  PowerProfile profile = [&] {
    if (!o.profile_path.empty()) return load_profile(o.profile_path);
    if (!o.builtin.empty()) return builtin_profile(o.builtin);
    return generate_drop(load_scenario(o.drop_spec), o.seed);
  }();
  if (o.normalize) profile = normalize_columns(profile);
  return profile;
}

int user_index(const CommonOptions& o, const PowerProfile& profile) {
  if (o.user < 1 || o.user > profile.n()) {
    throw ConfigError("--user must be in [1, " + std::to_string(profile.n()) + "]");
  }
  return o.user - 1;
}

double noise_variance_from_db(double noise_db) {
  if (std::isnan(noise_db)) throw ConfigError("--noise-db is required for this command");
  return std::pow(10.0, noise_db / 10.0);
}

// Transmit-SNR sweep in dB: "start:step:stop" (inclusive) or a single value.
std::vector<double> parse_sweep(const std::string& text) {
  if (text.empty()) throw ConfigError("--snr-db is required for this command");
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    try {
      size_t pos = 0;
      parts.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse sweep component '" + tok + "'");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw ConfigError("--snr-db expects 'start:step:stop' or a single value");
  const double start = parts[0], step = parts[1], stop = parts[2];
  if (!(step > 0.0) || stop < start || !std::isfinite(start) || !std::isfinite(stop)) {
    throw ConfigError("--snr-db sweep must have step > 0 and finite start <= stop");
  }
  std::vector<double> values;
  const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (std::int64_t i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
  return values;
}

ExponentialMixture receiver_mixture(Receiver receiver, const UserView& view, double s2) {
  return receiver == Receiver::Mmse ? mmse_mixture(view, s2) : zf_mixture(view, s2);
}

HighSnrAsymptote receiver_high_snr(Receiver receiver, const UserView& view,
                                   const ModulationSpec& mod) {
  return receiver == Receiver::Mmse ? mmse_high_snr(view, mod) : zf_high_snr(view, mod);
}

std::vector<double> log_grid(double lo, double hi, int count) {
  lo = std::max(lo, 1e-300);
  if (!(hi > lo)) hi = lo * (1.0 + 1e-6);
  std::vector<double> grid(static_cast<size_t>(count));
  const double ratio = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[static_cast<size_t>(i)] = lo * std::exp(ratio * i);
  return grid;
}

int cmd_analyze(const CommonOptions& o) {
  const PowerProfile profile = resolve_profile(o);
  const int user = user_index(o, profile);
  const Receiver receiver = receiver_from_string(o.receiver);
  const double s2 = noise_variance_from_db(o.noise_db);
  const UserView view = user_view(profile, user);
  const ExponentialMixture mix = receiver_mixture(receiver, view, s2);

  std::optional<EmpiricalDistribution> emp;
  if (o.samples > 0) {
    emp = empirical_cdf(profile, receiver, user, s2, o.samples, o.seed);
  }

  const double lo = emp ? emp->quantile(0.001) : mix.quantile(0.001);
  const double hi = emp ? emp->quantile(0.999) : mix.quantile(0.999);

  Table t;
  t.columns = {"z", "pdf_approx", "cdf_approx"};
  if (emp) t.columns.push_back("cdf_empirical");
  for (double z : log_grid(lo, hi, 400)) {
    std::vector<double> row{z, mix.pdf(z), mix.cdf(z)};
    if (emp) row.push_back(emp->cdf(z));
    t.rows.push_back(std::move(row));
  }
  if (emp) {
    t.add_summary("ks_distance", emp->ks_distance([&](double z) { return mix.cdf(z); }));
    if (emp->discarded() > 0) t.add_summary("discarded", static_cast<double>(emp->discarded()));
  }
  if (mix.has_complex_terms()) t.add_summary("complex_rate_pairs", 1.0);
  emit(t, "analyze", o.format, o.out_path);
  return kExitOk;
}

int cmd_ser(const CommonOptions& o) {
  const PowerProfile profile = resolve_profile(o);
  const int user = user_index(o, profile);
  const Receiver receiver = receiver_from_string(o.receiver);
  const ModulationSpec mod = ModulationSpec::parse(o.modulation);
  const UserView view = user_view(profile, user);

  std::vector<double> sweep_db;
  if (!o.snr_sweep.empty()) {
    sweep_db = parse_sweep(o.snr_sweep);
  } else {
    noise_variance_from_db(o.noise_db);  // validates presence
    sweep_db = {-o.noise_db};            // transmit SNR gamma = 1/sigma^2
  }

  const HighSnrAsymptote asym = receiver_high_snr(receiver, view, mod);

  Table t;
  t.columns = {"snr_db", "ser_mixture", "ser_highsnr"};
  if (o.samples > 0) {
    t.columns.push_back("ser_mc");
    t.columns.push_back("mc_stderr");
  }
  for (double snr_db : sweep_db) {
    const double gamma_bar = std::pow(10.0, snr_db / 10.0);
    const double s2 = 1.0 / gamma_bar;
    const ExponentialMixture mix = receiver_mixture(receiver, view, s2);
    std::vector<double> row{snr_db, ser_from_mixture(mix, mod), asym.ser(gamma_bar)};
    if (o.samples > 0) {
      const SerEstimate mc = semi_analytic_ser(profile, receiver, user, s2, mod, o.samples, o.seed);
      row.push_back(mc.ser);
      row.push_back(mc.std_error);
    }
    t.rows.push_back(std::move(row));
  }
  t.add_summary("diversity", static_cast<double>(asym.diversity));
  t.add_summary("array_gain", asym.array_gain);
  emit(t, "ser", o.format, o.out_path);
  return kExitOk;
}

int cmd_metric(const CommonOptions& o) {
  const PowerProfile profile = resolve_profile(o);
  const ModulationSpec mod = ModulationSpec::parse(o.modulation);

  Table t;
  t.columns = {"user", "zf_k0", "diversity", "zf_array_gain", "mmse_array_gain"};
  for (int u = 0; u < profile.n(); ++u) {
    const UserView view = user_view(profile, u);
    const HighSnrAsymptote zf = zf_high_snr(view, mod);
    const HighSnrAsymptote mmse = mmse_high_snr(view, mod);
    t.rows.push_back({static_cast<double>(u + 1), zf.k0,
                      static_cast<double>(zf.diversity), zf.array_gain, mmse.array_gain});
  }
  emit(t, "metric", o.format, o.out_path);
  return kExitOk;
}

int cmd_simulate(const CommonOptions& o) {
  const PowerProfile profile = resolve_profile(o);
  const int user = user_index(o, profile);
  const Receiver receiver = receiver_from_string(o.receiver);
  const double s2 = noise_variance_from_db(o.noise_db);
  if (o.samples <= 0) throw ConfigError("simulate requires --samples > 0");

  const EmpiricalDistribution emp = empirical_cdf(profile, receiver, user, s2, o.samples, o.seed);
  Table t;
  t.columns = {"z", "cdf_empirical"};
  for (double z : log_grid(emp.quantile(0.001), emp.quantile(0.999), 400)) {
    t.rows.push_back({z, emp.cdf(z)});
  }
  t.add_summary("mean", emp.mean());
  t.add_summary("count", static_cast<double>(emp.count()));
  t.add_summary("discarded", static_cast<double>(emp.discarded()));
  emit(t, "simulate", o.format, o.out_path);
  return kExitOk;
}

int cmd_drop(const CommonOptions& o) {
  Scenario scenario = o.drop_spec.empty()
                          ? Scenario::edge_excited_cell(o.drop_users, o.drop_antennas)
                          : load_scenario(o.drop_spec);
  if (scenario.users > scenario.n_r()) {
    throw ConfigError("scenario has more users than receive antennas (analysis needs n_r >= n)");
  }
  const Drop drop = generate_drop_full(scenario, o.seed);
  if (o.out_path.empty()) {
    std::cout << profile_to_json(drop.profile);
  } else {
    save_profile(drop.profile, o.out_path);
  }
  std::ostream& log = o.out_path.empty() ? std::cerr : std::cout;
  for (size_t k = 0; k < drop.transmit_scale.size(); ++k) {
    log << "user " << (k + 1)
        << ": T = " << fmt17(10.0 * std::log10(drop.transmit_scale[k])) << " dB\n";
  }
  return kExitOk;
}

int cmd_compare(const CommonOptions& o) {
  const PowerProfile profile = resolve_profile(o);
  const ModulationSpec mod = ModulationSpec::parse(o.modulation);
  std::vector<double> sweep_db;
  if (!o.snr_sweep.empty()) {
    sweep_db = parse_sweep(o.snr_sweep);
  } else {
    noise_variance_from_db(o.noise_db);  // validates presence
    sweep_db = {-o.noise_db};
  }

  const int n = profile.n();
  Table t;
  t.columns = {"snr_db"};
  for (int u = 1; u <= n; ++u) t.columns.push_back("zf_user" + std::to_string(u));
  for (int u = 1; u <= n; ++u) t.columns.push_back("mmse_user" + std::to_string(u));

  std::vector<double> k0(static_cast<size_t>(n));
  for (int u = 0; u < n; ++u) k0[static_cast<size_t>(u)] = zf_k0(user_view(profile, u));

  std::vector<double> last_zf(static_cast<size_t>(n), 0.0);
  for (double snr_db : sweep_db) {
    const double s2 = std::pow(10.0, -snr_db / 10.0);
    std::vector<double> row{snr_db};
    for (int u = 0; u < n; ++u) {
      const double v = ser_from_mixture(zf_mixture(user_view(profile, u), s2), mod);
      last_zf[static_cast<size_t>(u)] = v;
      row.push_back(v);
    }
    for (int u = 0; u < n; ++u) {
      row.push_back(ser_from_mixture(mmse_mixture(user_view(profile, u), s2), mod));
    }
    t.rows.push_back(std::move(row));
  }

  const auto ranking = [n](const std::vector<double>& values) {
    std::vector<int> order(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) order[static_cast<size_t>(u)] = u;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[static_cast<size_t>(a)] < values[static_cast<size_t>(b)]; });
    std::string text;
    for (int u : order) text += (text.empty() ? "" : ">") + std::to_string(u + 1);
    return std::pair(order, text);
  };
  const auto [k0_order, k0_text] = ranking(k0);
  const auto [ser_order, ser_text] = ranking(last_zf);
  for (int u = 0; u < n; ++u) {
    t.add_summary("zf_k0_user" + std::to_string(u + 1), k0[static_cast<size_t>(u)]);
  }
  t.add_summary("k0_ranking", k0_text);
  t.add_summary("zf_ser_ranking", ser_text);
  t.add_summary("ordering_match", k0_order == ser_order ? 1.0 : 0.0);
  emit(t, "compare", o.format, o.out_path);
  return kExitOk;
}

}  // namespace

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const DegenerateRootsError&) {
    return kExitNumericalDegeneracy;
  } catch (const QuadratureError&) {
    return kExitNumericalDegeneracy;
  } catch (const NumericalError&) {
    return kExitNumericalDegeneracy;
  } catch (const ConfigError&) {
    return kExitConfigError;
  } catch (const FormatError&) {
    return kExitConfigError;
  } catch (const SingularProfileError&) {
    return kExitConfigError;
  } catch (const std::invalid_argument&) {
    return kExitConfigError;
  } catch (const std::out_of_range&) {
    return kExitConfigError;
  } catch (...) {
    return 1;
  }
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"macrodiv: output SINR/SNR distributions, SER curves and high-SNR "
               "metrics for MMSE/ZF receivers over arbitrary power profiles"};
  app.require_subcommand(1);

  CommonOptions o;

  CLI::App* analyze = app.add_subcommand("analyze", "approximate PDF/CDF of the output SINR/SNR, optionally vs Monte Carlo");
  CLI::App* ser = app.add_subcommand("ser", "SER curve over a transmit-SNR sweep");
  CLI::App* metric = app.add_subcommand("metric", "per-user high-SNR metrics (k0, diversity, array gain)");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo empirical CDF of the receiver statistic");
  CLI::App* drop = app.add_subcommand("drop", "generate a random drop profile from a scenario");
  CLI::App* compare = app.add_subcommand("compare", "per-user SER for both receivers over a sweep");

  for (CLI::App* cmd : {analyze, ser, metric, simulate, compare}) {
    add_profile_flags(cmd, o);
    add_output_flags(cmd, o);
    cmd->add_option("--seed", o.seed, "random seed");
  }
  for (CLI::App* cmd : {analyze, ser, simulate}) {
    cmd->add_option("--user", o.user, "1-based user index (default 1)");
    cmd->add_option("--receiver", o.receiver, "mmse or zf")
        ->check(CLI::IsMember({"mmse", "zf"}));
    cmd->add_option("--samples", o.samples, "Monte Carlo sample count (0 disables)");
  }
  analyze->add_option("--noise-db", o.noise_db, "noise variance in dB");
  simulate->add_option("--noise-db", o.noise_db, "noise variance in dB");
  for (CLI::App* cmd : {ser, compare}) {
    cmd->add_option("--snr-db", o.snr_sweep, "transmit SNR sweep 'start:step:stop' in dB");
    cmd->add_option("--noise-db", o.noise_db, "single noise variance in dB (alternative to --snr-db)");
    cmd->add_option("--mod", o.modulation, "modulation: bpsk, qpsk, <M>psk, <M>qam");
  }
  metric->add_option("--mod", o.modulation, "modulation for array gains (default qpsk)");
  drop->add_option("--drop-spec", o.drop_spec, "scenario file (macrodiv-scenario-v1)");
  drop->add_option("--users", o.drop_users, "users for the default scenario (default 3)");
  drop->add_option("--antennas-per-bs", o.drop_antennas, "antennas per site for the default scenario");
  drop->add_option("--seed", o.seed, "random seed");
  drop->add_option("--out", o.out_path, "profile output path (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(o);
    if (ser->parsed()) return cmd_ser(o);
    if (metric->parsed()) return cmd_metric(o);
    if (simulate->parsed()) return cmd_simulate(o);
    if (drop->parsed()) return cmd_drop(o);
    if (compare->parsed()) return cmd_compare(o);
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "macrodiv: " << e.what() << "\n";
    return exit_code_for_current_exception();
  }
}

}  // namespace macrodiv::cli
