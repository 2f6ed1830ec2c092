#pragma once

#include <filesystem>
#include <string>

#include "dmtherm/sweep.hpp"
#include "json.hpp"

namespace dmtherm::cli {

// Shortest decimal that parses back to the same double.
std::string shortest(double v);

// %.17g; also round-trips, but with a fixed digit count.
std::string digits17(double v);

std::string sweep_header(const SweepResult& r);
std::string to_csv(const SweepResult& r);
nlohmann::json to_json(const SweepResult& r);

// Writes to `path + ".tmp"` and renames over the target, so readers never see
// a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace dmtherm::cli
