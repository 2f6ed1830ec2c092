#pragma once

#include <iosfwd>

#include "config.hpp"
#include "verify.hpp"

namespace dmtherm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitComputation = 1,
  kExitUsage = 2,
  kExitVerification = 3,
};

// Each command writes its result to `out` (or cfg.out when set) and throws
// dmtherm::Error / ConfigError on failure; run_cli maps those to exit codes.
void cmd_spectrum(const RunConfig& cfg, std::ostream& out);
void cmd_state(const RunConfig& cfg, std::ostream& out);
void cmd_concurrence(const RunConfig& cfg, std::ostream& out);
void cmd_discord(const RunConfig& cfg, std::ostream& out);
void cmd_tc(const RunConfig& cfg, std::ostream& out);
void cmd_dstar(const RunConfig& cfg, std::ostream& out);
void cmd_sweep(const RunConfig& cfg, std::ostream& out);
// Returns true when every gating suite passed.
bool cmd_verify(const RunConfig& cfg, VerifyLevel level, std::ostream& out, std::ostream& progress);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dmtherm::cli
