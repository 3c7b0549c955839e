#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vilenkin/cli/config.hpp"

namespace vilenkin::cli {

/// Outcome of one named check. `value` is a residual for identity suites
/// and an observed statistic (empirical constant, stability ratio, error)
/// for experiments; `threshold` is the bound it is compared with.
struct SuiteResult {
  std::string name;
  bool passed = true;
  double value = 0.0;
  double threshold = 0.0;
  std::size_t checks = 0;
  std::string detail;
  /// Reported but never counted against the exit code.
  bool informational = false;
};

struct RunReport {
  std::string command;
  std::vector<SuiteResult> suites;
  /// Command-specific summary (empirical constants, trend verdicts).
  nlohmann::json data = nlohmann::json::object();

  bool passed() const;
  /// 0 when every non-informational suite passed, 1 otherwise.
  int exit_code() const;
  /// Deterministic: no timings, suites in execution order.
  nlohmann::json to_json(const ExperimentConfig& cfg) const;
};

/// Identity suites; writes verify.json.
RunReport run_verify(const ExperimentConfig& cfg);
/// sup-error of sigma_n^{-alpha} f over the n schedule with the hypothesis
/// evaluators; writes converge.csv and converge.json.
RunReport run_converge(const ExperimentConfig& cfg);
/// Bound-lemma ratio scans; writes kernel_scan.csv and kernel_scan.json.
RunReport run_kernel_scan(const ExperimentConfig& cfg);
/// Per-scale oscillation profile; writes oscillation.csv and
/// oscillation.json.
RunReport run_oscillation(const ExperimentConfig& cfg);
/// Naive against fast forward transform; writes bench.json. Timings make
/// this the one non-deterministic output.
RunReport run_bench(const ExperimentConfig& cfg);

}  // namespace vilenkin::cli
