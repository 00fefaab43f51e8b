#pragma once

#include <string>
#include <vector>

namespace stonework {

/// One verified property.  `law` restates what was checked in plain terms,
/// `evidence` records the scope (window depth, sample count, tolerance).
/// Status "open-evidence" marks finite-window support for claims about the
/// infinite objects, as opposed to complete finite verification.
struct Check {
  std::string name;
  std::string law;
  std::string status;  // pass | fail | open-evidence
  std::string evidence;

  static Check pass(std::string name, std::string law, std::string evidence) {
    return {std::move(name), std::move(law), "pass", std::move(evidence)};
  }
  static Check fail(std::string name, std::string law, std::string evidence) {
    return {std::move(name), std::move(law), "fail", std::move(evidence)};
  }
  static Check open(std::string name, std::string law, std::string evidence) {
    return {std::move(name), std::move(law), "open-evidence", std::move(evidence)};
  }
  static Check of(bool ok, std::string name, std::string law, std::string evidence) {
    return ok ? pass(std::move(name), std::move(law), std::move(evidence))
              : fail(std::move(name), std::move(law), std::move(evidence));
  }
};

struct RunConfig {
  std::string command;
  int depth = 6;
  int n = 3;
  int max_n = 4;
  uint64_t seed = 1;
  std::string mode = "exact";  // exact | float
  std::string space = "builtin-cantor";
  std::string out;             // report path, empty = stdout only
  std::vector<std::string> suites;  // empty = all
  bool dump = false;           // embed dense matrices where supported
};

struct Report {
  RunConfig config;
  std::vector<Check> checks;

  bool all_passed() const {
    for (const Check& c : checks)
      if (c.status == "fail") return false;
    return true;
  }
  void add(Check c) { checks.push_back(std::move(c)); }

  /// Serialized form, stable byte for byte for a fixed config.
  std::string to_json() const;
};

}  // namespace stonework
