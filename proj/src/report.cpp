#include "stonework/report.hpp"

#include <json.hpp>

namespace stonework {

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "stonework/report/1";
  j["command"] = config.command;
  nlohmann::ordered_json cfg;
  cfg["space"] = config.space;
  cfg["mode"] = config.mode;
  cfg["depth"] = config.depth;
  cfg["n"] = config.n;
  cfg["max_n"] = config.max_n;
  cfg["seed"] = config.seed;
  cfg["suites"] = config.suites;
  cfg["dump"] = config.dump;
  j["config"] = cfg;

  int pass = 0, fail = 0, open = 0;
  for (const Check& c : checks) {
    if (c.status == "pass") ++pass;
    else if (c.status == "fail") ++fail;
    else ++open;
  }
  nlohmann::ordered_json sum;
  sum["total"] = checks.size();
  sum["pass"] = pass;
  sum["fail"] = fail;
  sum["open_evidence"] = open;
  j["summary"] = sum;

  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["law"] = c.law;
    e["status"] = c.status;
    e["evidence"] = c.evidence;
    arr.push_back(e);
  }
  j["checks"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace stonework
