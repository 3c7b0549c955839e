#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "vilenkin/cli/runners.hpp"

namespace vilenkin::cli::detail {

/// Largest residual seen so far against a fixed tolerance.
class Tracker {
 public:
  Tracker(std::string name, double threshold)
      : result_{std::move(name), true, 0.0, threshold} {}

  void observe(double residual) {
    ++result_.checks;
    if (!std::isfinite(residual)) {
      bad_ = residual;
      finite_ = false;
    } else if (residual > result_.value) {
      result_.value = residual;
    }
  }
  void set_detail(std::string d) { result_.detail = std::move(d); }
  SuiteResult finish() const {
    SuiteResult r = result_;
    if (!finite_) r.value = bad_;
    r.passed = finite_ && r.value <= r.threshold;
    return r;
  }

 private:
  SuiteResult result_;
  bool finite_ = true;
  double bad_ = 0.0;
};

inline SuiteResult informational(std::string name, double value, std::string detail) {
  SuiteResult r{std::move(name), true, value, 0.0, 1, std::move(detail)};
  r.informational = true;
  return r;
}

/// Creates the output directory; failures are configuration errors.
void prepare_output(const std::filesystem::path& dir);

void write_report(const RunReport& report, const ExperimentConfig& cfg,
                  const std::filesystem::path& file);

}  // namespace vilenkin::cli::detail
