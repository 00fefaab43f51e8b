#pragma once

#include <iosfwd>
#include <string>

#include "stonework/report.hpp"

namespace stonework {

/// Everything a command run produces.  `rendered` holds the bytes destined
/// for --out (the JSON report, or the tree manifest for reparam);
/// `printout` the per-check lines for stdout.  Both are functions of the
/// config alone, so equal configs give equal bytes.
struct RunResult {
  Report report;
  std::string rendered;
  std::string printout;
  int exit_code = 0;  // 0 all passed, 1 failures
};

/// Dispatch a config to its command.  Throws std::invalid_argument for
/// unknown commands, suites, spaces or out-of-range sizes; failures inside
/// a suite become fail records, not exceptions.
RunResult run(const RunConfig& config);

/// Parse argv (without the program name), run, print, write --out.
/// Returns the process exit code: 0 pass, 1 failures, 2 config error.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace stonework
