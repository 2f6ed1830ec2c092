#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace dmtherm::cli {

enum class VerifyLevel { Quick, Full };

struct SuiteResult {
  std::string name;
  int draws = 0;
  int failures = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool informational = false;  // reported, never fails the run
  std::string note;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  VerifyLevel level = VerifyLevel::Quick;
  std::vector<SuiteResult> suites;
  double seconds = 0.0;

  bool passed() const;
};

int draws_for(VerifyLevel level);

// Every closed form against its brute-force oracle on seeded random draws:
// J in [-3, 3], D in [-4, 4], t log-uniform in [0.05, 100]. Each suite gets
// its own generator seeded from (seed, suite index), so suites are
// reproducible individually.
VerifyReport run_verify(VerifyLevel level, std::uint64_t seed, std::ostream* progress = nullptr);

void print_report(std::ostream& os, const VerifyReport& r);
nlohmann::json to_json(const VerifyReport& r);

}  // namespace dmtherm::cli
