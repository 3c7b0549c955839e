#include <algorithm>

#include "vilenkin/cli/csv.hpp"
#include "vilenkin/cli/runners.hpp"

namespace vilenkin::cli {

bool RunReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) {
    return s.passed || s.informational;
  });
}

int RunReport::exit_code() const { return passed() ? 0 : 1; }

nlohmann::json RunReport::to_json(const ExperimentConfig& cfg) const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["passed"] = passed();
  j["exit_code"] = exit_code();
  j["seed"] = cfg.seed;
  j["config"] = config_to_json(cfg);
  j["suites"] = nlohmann::json::array();
  for (const auto& s : suites) {
    j["suites"].push_back({{"name", s.name},
                           {"passed", s.passed},
                           {"informational", s.informational},
                           {"value", s.value},
                           {"threshold", s.threshold},
                           {"checks", s.checks},
                           {"detail", s.detail}});
  }
  j["data"] = data;
  return j;
}

}  // namespace vilenkin::cli
