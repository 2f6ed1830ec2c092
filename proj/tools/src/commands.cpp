#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <system_error>

#include "CLI11.hpp"
#include "dmtherm/critical.hpp"
#include "dmtherm/discord.hpp"
#include "dmtherm/entanglement.hpp"
#include "dmtherm/errors.hpp"
#include "dmtherm/thermal.hpp"
#include "output.hpp"

namespace dmtherm::cli {

namespace {

using Fields = nlohmann::ordered_json;

nlohmann::json complex_pair(const Complex& z) { return nlohmann::json::array({z.real(), z.imag()}); }

void flatten(const std::string& key, const nlohmann::ordered_json& v, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(key + "_" + std::to_string(i), v[i], out);
  } else if (v.is_number()) {
    out.emplace_back(key, digits17(v.get<double>()));
  } else if (v.is_boolean()) {
    out.emplace_back(key, v.get<bool>() ? "true" : "false");
  } else if (v.is_null()) {
    out.emplace_back(key, "none");
  } else {
    out.emplace_back(key, v.get<std::string>());
  }
}

std::string join_scalars(const nlohmann::ordered_json& v) {
  std::vector<std::pair<std::string, std::string>> flat;
  flatten("", v, flat);
  std::string s;
  for (const auto& [k, x] : flat) {
    if (!s.empty()) s += ' ';
    s += x;
  }
  return s;
}

std::string render(const Fields& f, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::Json: return f.dump(2) + "\n";
    case OutputFormat::Csv: {
      std::vector<std::pair<std::string, std::string>> flat;
      for (const auto& [k, v] : f.items()) flatten(k, v, flat);
      std::string head, row;
      for (const auto& [k, v] : flat) {
        head += (head.empty() ? "" : ",") + k;
        row += (row.empty() ? "" : ",") + v;
      }
      return head + "\n" + row + "\n";
    }
    case OutputFormat::Text: {
      std::string s;
      for (const auto& [k, v] : f.items()) s += k + " " + join_scalars(v) + "\n";
      return s;
    }
  }
  return {};
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty()) {
    out << content;
  } else {
    write_atomic(cfg.out, content);
  }
}

void emit_fields(const RunConfig& cfg, const Fields& f, std::ostream& out) {
  emit(cfg, render(f, cfg.format.value_or(OutputFormat::Text)), out);
}

Fields couplings_fields(const RunConfig& cfg) {
  const Couplings& c = cfg.couplings;
  Fields f;
  f["case"] = std::string(to_string(classify(c)));
  return f;
}

}  // namespace

void cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const Couplings& c = cfg.couplings;
  Fields f = couplings_fields(cfg);
  SpectralDecomposition4 s;
  switch (classify(c)) {
    case DmCase::ZOnly: s = spectrum_z(c); break;
    case DmCase::YOnly: s = spectrum_y(c); break;
    case DmCase::XYPlane: s = spectrum_xy(c); break;
    case DmCase::General: s = spectrum_numeric(c); break;
  }
  f["form"] = classify(c) == DmCase::General ? "numeric" : "analytic";
  for (std::size_t i = 0; i < 4; ++i) f["E" + std::to_string(i + 1)] = s.eigenvalues[i];
  if (cfg.verbose || cfg.format == OutputFormat::Json) {
    for (std::size_t i = 0; i < 4; ++i) {
      nlohmann::json v = nlohmann::json::array();
      for (const Complex& z : s.eigenvectors[i]) v.push_back(complex_pair(z));
      f["v" + std::to_string(i + 1)] = v;
    }
  }
  emit_fields(cfg, f, out);
}

void cmd_state(const RunConfig& cfg, std::ostream& out) {
  const ThermalState st = thermal_state_generic(cfg.couplings, cfg.temperature);
  Fields f = couplings_fields(cfg);
  f["temperature"] = cfg.temperature;
  f["partition"] = st.partition_value;
  f["log_partition"] = st.log_partition;
  for (std::size_t i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < 4; ++j) row.push_back(complex_pair(st.rho(i, j)));
    f["rho_row" + std::to_string(i)] = row;
  }
  emit_fields(cfg, f, out);
}

void cmd_concurrence(const RunConfig& cfg, std::ostream& out) {
  const ConcurrenceBreakdown b = concurrence(cfg.couplings, cfg.temperature);
  Fields f;
  f["concurrence"] = b.value;
  if (cfg.verbose) {
    f["case"] = std::string(to_string(classify(cfg.couplings)));
    f["lambdas"] = b.lambdas;
    f["margin"] = b.margin;
  }
  emit_fields(cfg, f, out);
}

void cmd_discord(const RunConfig& cfg, std::ostream& out) {
  const DiscordBreakdown b = discord(cfg.couplings, cfg.temperature);
  Fields f;
  f["discord"] = b.value;
  if (cfg.verbose) {
    f["case"] = std::string(to_string(classify(cfg.couplings)));
    f["mutual_info"] = b.mutual_info;
    f["classical_corr"] = b.classical_corr;
    f["branch"] = std::string(to_string(b.branch));
    if (b.minimizer) {
      f["theta"] = b.minimizer->theta;
      f["phi"] = b.minimizer->phi;
    }
  }
  emit_fields(cfg, f, out);
}

void cmd_tc(const RunConfig& cfg, std::ostream& out) {
  const Couplings& c = cfg.couplings;
  Fields f;
  const DmCase k = classify(c);
  if (k == DmCase::ZOnly || k == DmCase::YOnly) {
    const CriticalResult r = k == DmCase::ZOnly ? critical_temperature_z(c) : critical_temperature_y(c);
    f["tc"] = r.tc;
    f["branch"] = std::string(to_string(r.branch));
    if (cfg.verbose) f["residual"] = r.residual;
  } else {
    f["tc"] = critical_temperature_oracle(c);
    f["branch"] = "Oracle";
  }
  emit_fields(cfg, f, out);
}

void cmd_dstar(const RunConfig& cfg, std::ostream& out) {
  const PhaseBoundary z = d_z_star(cfg.couplings);
  const PhaseBoundary y = d_y_star(cfg.couplings);
  Fields f;
  f["dz_star"] = z.d_star ? nlohmann::ordered_json(*z.d_star) : nlohmann::ordered_json(nullptr);
  f["dy_star"] = y.d_star ? nlohmann::ordered_json(*y.d_star) : nlohmann::ordered_json(nullptr);
  if (cfg.verbose) {
    f["z_j_greater"] = z.j_greater;
    f["z_j_less"] = z.j_less;
    f["y_j_greater"] = y.j_greater;
    f["y_j_less"] = y.j_less;
  }
  emit_fields(cfg, f, out);
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const SweepSpec spec = make_sweep_spec(cfg);
  try {
    validate(spec);
  } catch (const Error& e) {
    // an unusable spec is a configuration problem, not a computation failure
    throw ConfigError(std::string("invalid sweep: ") + e.what());
  }
  const SweepResult r = run_sweep(spec);
  const bool json = cfg.format == OutputFormat::Json;
  emit(cfg, json ? to_json(r).dump() + "\n" : to_csv(r), out);
}

bool cmd_verify(const RunConfig& cfg, VerifyLevel level, std::ostream& out, std::ostream& progress) {
  const VerifyReport r = run_verify(level, cfg.seed, cfg.verbose ? &progress : nullptr);
  if (cfg.format == OutputFormat::Json) {
    emit(cfg, to_json(r).dump(2) + "\n", out);
  } else {
    std::ostringstream ss;
    print_report(ss, r);
    emit(cfg, ss.str(), out);
  }
  return r.passed();
}

namespace {

struct Flags {
  std::optional<double> jx, jy, jz, dx, dy, dz, temp;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  std::string preset;
  std::string config;
  std::string axis1, axis2, quantity;
  std::optional<unsigned> threads;
  std::string level = "quick";
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--jx", f.jx, "exchange coupling Jx");
  sub->add_option("--jy", f.jy, "exchange coupling Jy");
  sub->add_option("--jz", f.jz, "exchange coupling Jz");
  sub->add_option("--dx", f.dx, "DM component Dx");
  sub->add_option("--dy", f.dy, "DM component Dy");
  sub->add_option("--dz", f.dz, "DM component Dz");
  sub->add_option("--temp", f.temp, "temperature (k_B = 1)");
  sub->add_option("--out", f.out, "write output to this file instead of stdout");
  sub->add_option("--format", f.format, "text, csv or json");
  sub->add_option("--seed", f.seed, "RNG seed for verify");
  sub->add_flag("--verbose,-v", f.verbose, "print breakdown fields");
  auto* preset = sub->add_option("--preset", f.preset, "named config from the preset directory");
  sub->add_option("--config", f.config, "key = value config file")->excludes(preset);
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  if (!f.preset.empty()) cfg = load_config_file(preset_path(f.preset));
  if (!f.config.empty()) cfg = load_config_file(f.config);
  auto set = [](double& dst, const std::optional<double>& v, const char* name) {
    if (!v) return;
    if (!std::isfinite(*v)) throw ConfigError(std::string("--") + name + " must be finite");
    dst = *v;
  };
  set(cfg.couplings.jx, f.jx, "jx");
  set(cfg.couplings.jy, f.jy, "jy");
  set(cfg.couplings.jz, f.jz, "jz");
  set(cfg.couplings.dx, f.dx, "dx");
  set(cfg.couplings.dy, f.dy, "dy");
  set(cfg.couplings.dz, f.dz, "dz");
  set(cfg.temperature, f.temp, "temp");
  if (!f.out.empty()) cfg.out = f.out;
  if (!f.format.empty()) {
    cfg.format = parse_format(f.format);
    if (!cfg.format) throw ConfigError("--format must be text, csv or json");
  }
  if (f.seed) cfg.seed = *f.seed;
  if (f.verbose) cfg.verbose = true;
  if (!f.axis1.empty()) cfg.axis1 = parse_axis(f.axis1, "--axis1");
  if (!f.axis2.empty()) cfg.axis2 = parse_axis(f.axis2, "--axis2");
  if (!f.quantity.empty()) {
    cfg.quantity = parse_quantity(f.quantity);
    if (!cfg.quantity) throw ConfigError("unknown quantity '" + f.quantity + "'");
  }
  if (f.threads) cfg.threads = *f.threads;
  return cfg;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal entanglement, discord and critical temperatures of a two-qubit XYZ chain with DM interaction",
               "dmtherm"};
  app.require_subcommand(1);
  Flags flags;

  using Handler = std::function<void(const RunConfig&)>;
  std::map<std::string, Handler> handlers;
  auto point = [&](const char* name, const char* help, void (*fn)(const RunConfig&, std::ostream&)) {
    add_common(app.add_subcommand(name, help), flags);
    handlers[name] = [fn, &out](const RunConfig& cfg) { fn(cfg, out); };
  };
  point("spectrum", "eigenvalues and eigenvectors of H", cmd_spectrum);
  point("state", "thermal density matrix", cmd_state);
  point("concurrence", "thermal concurrence", cmd_concurrence);
  point("discord", "thermal quantum discord", cmd_discord);
  point("tc", "critical temperature above which concurrence vanishes", cmd_tc);
  point("dstar", "DM strength where T_c reaches zero", cmd_dstar);

  auto* sweep = app.add_subcommand("sweep", "grid evaluation written as CSV or JSON");
  add_common(sweep, flags);
  sweep->add_option("--axis1", flags.axis1, "\"<param> <start> <stop> <count>\"");
  sweep->add_option("--axis2", flags.axis2, "second axis, same syntax");
  sweep->add_option("--quantity", flags.quantity, "quantity to evaluate");
  sweep->add_option("--threads", flags.threads, "worker threads, 0 = all cores");
  handlers["sweep"] = [&out](const RunConfig& cfg) { cmd_sweep(cfg, out); };

  auto* verify = app.add_subcommand("verify", "closed forms against numerical oracles");
  add_common(verify, flags);
  verify->add_option("level", flags.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  bool verify_passed = true;
  handlers["verify"] = [&](const RunConfig& cfg) {
    verify_passed = cmd_verify(cfg, flags.level == "full" ? VerifyLevel::Full : VerifyLevel::Quick, out, err);
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const RunConfig cfg = build_config(flags);
    const std::string name = app.get_subcommands().front()->get_name();
    handlers.at(name)(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  } catch (const std::system_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return verify_passed ? kExitOk : kExitVerification;
}

}  // namespace dmtherm::cli
