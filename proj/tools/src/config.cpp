#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace dmtherm::cli {

namespace {

constexpr std::string_view kKeys[] = {
    "jx", "jy", "jz", "dx", "dy", "dz", "temp",
    "format", "out", "seed", "verbose", "threads",
    "axis1", "axis1_label", "axis2", "axis2_label",
    "quantity", "quantity_label", "t_floor",
};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string where(std::string_view source, int line) { return std::string(source) + ":" + std::to_string(line) + ": "; }

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError(std::string(what) + ": not an unsigned integer: '" + std::string(s) + "'");
  return v;
}

bool parse_bool(std::string_view s, std::string_view what) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(std::string(what) + ": expected true/false, got '" + std::string(s) + "'");
}

}  // namespace

std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  return std::nullopt;
}

double parse_real(std::string_view s, std::string_view what) {
  s = trim(s);
  // from_chars rejects a leading '+'
  std::string_view body = s;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size())
    throw ConfigError(std::string(what) + ": not a number: '" + std::string(s) + "'");
  if (!std::isfinite(v)) throw ConfigError(std::string(what) + ": must be finite");
  return v;
}

Axis parse_axis(std::string_view s, std::string_view what) {
  std::istringstream in{std::string(s)};
  std::string name, start, stop, count, extra;
  if (!(in >> name >> start >> stop >> count) || (in >> extra))
    throw ConfigError(std::string(what) + ": expected '<param> <start> <stop> <count>', got '" + std::string(s) + "'");
  const auto p = parse_parameter(name);
  if (!p) throw ConfigError(std::string(what) + ": unknown parameter '" + name + "' (t, jx, jy, jz, dx, dy, dz)");
  Axis a;
  a.parameter = *p;
  a.start = parse_real(start, what);
  a.stop = parse_real(stop, what);
  const auto n = parse_uint(count, what);
  if (n < 2 || n > 100000) throw ConfigError(std::string(what) + ": count must lie in [2, 100000]");
  a.count = static_cast<int>(n);
  if (!(a.start < a.stop)) throw ConfigError(std::string(what) + ": start must be below stop");
  return a;
}

std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source) {
  std::vector<ConfigEntry> out;
  std::set<std::string, std::less<>> seen;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where(source, lineno) + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys))
      throw ConfigError(where(source, lineno) + "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where(source, lineno) + "empty value for '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where(source, lineno) + "duplicate key '" + key + "'");
    out.push_back({key, value, lineno});
  }
  return out;
}

void apply(RunConfig& cfg, const std::vector<ConfigEntry>& entries, std::string_view source) {
  std::string label1, label2;
  for (const auto& e : entries) {
    const std::string what = where(source, e.line) + e.key;
    const std::string_view k = e.key;
    if (k == "jx") cfg.couplings.jx = parse_real(e.value, what);
    else if (k == "jy") cfg.couplings.jy = parse_real(e.value, what);
    else if (k == "jz") cfg.couplings.jz = parse_real(e.value, what);
    else if (k == "dx") cfg.couplings.dx = parse_real(e.value, what);
    else if (k == "dy") cfg.couplings.dy = parse_real(e.value, what);
    else if (k == "dz") cfg.couplings.dz = parse_real(e.value, what);
    else if (k == "temp") cfg.temperature = parse_real(e.value, what);
    else if (k == "t_floor") cfg.t_floor = parse_real(e.value, what);
    else if (k == "out") cfg.out = e.value;
    else if (k == "seed") cfg.seed = parse_uint(e.value, what);
    else if (k == "threads") cfg.threads = static_cast<unsigned>(parse_uint(e.value, what));
    else if (k == "verbose") cfg.verbose = parse_bool(e.value, what);
    else if (k == "format") {
      cfg.format = parse_format(e.value);
      if (!cfg.format) throw ConfigError(what + ": expected text, csv or json");
    } else if (k == "axis1") cfg.axis1 = parse_axis(e.value, what);
    else if (k == "axis2") cfg.axis2 = parse_axis(e.value, what);
    else if (k == "axis1_label") label1 = e.value;
    else if (k == "axis2_label") label2 = e.value;
    else if (k == "quantity") {
      cfg.quantity = parse_quantity(e.value);
      if (!cfg.quantity) throw ConfigError(what + ": unknown quantity '" + e.value + "'");
    } else if (k == "quantity_label") cfg.quantity_label = e.value;
  }
  if (!label1.empty()) {
    if (!cfg.axis1) throw ConfigError(std::string(source) + ": axis1_label without axis1");
    cfg.axis1->label = label1;
  }
  if (!label2.empty()) {
    if (!cfg.axis2) throw ConfigError(std::string(source) + ": axis2_label without axis2");
    cfg.axis2->label = label2;
  }
  if (!(cfg.t_floor > 0.0)) throw ConfigError(std::string(source) + ": t_floor must be positive");
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig cfg;
  const std::string src = path.string();
  apply(cfg, parse_config_text(ss.str(), src), src);
  return cfg;
}

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("DMTHERM_PRESET_DIR"); env && *env) return env;
#ifdef DMTHERM_DEFAULT_PRESET_DIR
  return DMTHERM_DEFAULT_PRESET_DIR;
#else
  return "presets";
#endif
}

std::filesystem::path preset_path(std::string_view name) {
  if (name.empty() || name.find_first_of("/\\.") != std::string_view::npos)
    throw ConfigError("invalid preset name '" + std::string(name) + "'");
  auto p = preset_dir() / (std::string(name) + ".cfg");
  if (!std::filesystem::exists(p)) throw ConfigError("no preset '" + std::string(name) + "' in " + preset_dir().string());
  return p;
}

SweepSpec make_sweep_spec(const RunConfig& cfg) {
  if (!cfg.axis1) throw ConfigError("sweep needs axis1");
  if (!cfg.quantity) throw ConfigError("sweep needs quantity");
  SweepSpec s;
  s.base = cfg.couplings;
  s.temperature = cfg.temperature;
  s.axis1 = *cfg.axis1;
  s.axis2 = cfg.axis2;
  s.quantity = *cfg.quantity;
  s.quantity_label = cfg.quantity_label;
  s.t_floor = cfg.t_floor;
  s.threads = cfg.threads;
  return s;
}

}  // namespace dmtherm::cli
