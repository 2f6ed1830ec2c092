#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "dmtherm/errors.hpp"

namespace dmtherm::cli {

namespace {

std::string axis_label(const Axis& a) { return a.label.empty() ? std::string(to_string(a.parameter)) : a.label; }

std::string value_label(const SweepSpec& s) {
  return s.quantity_label.empty() ? std::string(column_name(s.quantity)) : s.quantity_label;
}

bool any_tagged(const SweepResult& r) {
  return std::any_of(r.rows.begin(), r.rows.end(), [](const SweepRow& row) { return !row.tag.empty(); });
}

}  // namespace

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return digits17(v);
  return std::string(buf, ptr);
}

std::string digits17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sweep_header(const SweepResult& r) {
  std::string h = axis_label(r.spec.axis1);
  if (r.spec.axis2) h += "," + axis_label(*r.spec.axis2);
  h += "," + value_label(r.spec);
  if (any_tagged(r)) h += ",tag";
  return h;
}

std::string to_csv(const SweepResult& r) {
  const bool two = r.spec.axis2.has_value();
  const bool tagged = any_tagged(r);
  std::string out = sweep_header(r) + "\n";
  out.reserve(out.size() + r.rows.size() * 48);
  for (const SweepRow& row : r.rows) {
    out += shortest(row.axes[0]);
    if (two) out += "," + shortest(row.axes[1]);
    out += ",";
    if (row.value) out += shortest(*row.value);
    if (tagged) out += "," + row.tag;
    out += "\n";
  }
  return out;
}

nlohmann::json to_json(const SweepResult& r) {
  nlohmann::json j;
  nlohmann::json columns = nlohmann::json::array({axis_label(r.spec.axis1)});
  if (r.spec.axis2) columns.push_back(axis_label(*r.spec.axis2));
  columns.push_back(value_label(r.spec));
  columns.push_back("tag");
  j["columns"] = columns;
  j["quantity"] = std::string(to_string(r.spec.quantity));
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : r.rows) {
    nlohmann::json rec = nlohmann::json::array({row.axes[0]});
    if (r.spec.axis2) rec.push_back(row.axes[1]);
    rec.push_back(row.value ? nlohmann::json(*row.value) : nlohmann::json(nullptr));
    rec.push_back(row.tag);
    rows.push_back(std::move(rec));
  }
  j["rows"] = std::move(rows);
  return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::system_error(errno, std::generic_category(), "cannot open " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::system_error(errno, std::generic_category(), "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::system_error(ec, "cannot move output into " + path.string());
  }
}

}  // namespace dmtherm::cli
