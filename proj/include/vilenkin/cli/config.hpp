#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vilenkin/group.hpp"
#include "vilenkin/oscillation.hpp"
#include "vilenkin/step_function.hpp"

namespace vilenkin::cli {

/// Test-function family plus its raw parameters, e.g.
/// {"family": "lacunary", "s": 1.0}.
struct FunctionSpec {
  std::string family = "lacunary";
  nlohmann::json params = nlohmann::json::object();
};

/// Which orders n an experiment visits.
struct Schedule {
  enum class Kind { scales, list, range };
  Kind kind = Kind::scales;
  /// kind == scales: n = M_k for first_scale <= k <= last_scale
  /// (last_scale == 0 means N - 1).
  std::size_t first_scale = 1;
  std::size_t last_scale = 0;
  /// kind == list.
  std::vector<Index> list;
  /// kind == range, inclusive; last == 0 means M_N.
  Index first = 1;
  Index last = 0;
  /// Non-scale orders added to any kind.
  std::vector<Index> extra;
};

/// Trend thresholds for convergence runs, evaluated over scale points only.
struct TrendSpec {
  std::size_t trailing_scales = 4;
  /// Final error must be at most final_ratio times the error at
  /// reference_scale.
  double final_ratio = 0.25;
  std::size_t reference_scale = 2;
  bool enforce = true;
};

struct KernelScanSpec {
  std::vector<std::string> lemmas{"lemma2", "lemma3"};
  double stability_factor = 1.5;
  /// Lemma 2 range end; 0 means M_N.
  Index lemma2_last = 0;
  Index lemma4_max_n = 256;
  Index lemma4_reference_n = 16;
  std::size_t lemma4_draws = 100;
  double lemma4_growth_factor = 3.0;
  /// Lemma 5 skips the top scales k > N - 1 - guard.
  std::size_t lemma5_top_guard = 3;
};

struct BenchSpec {
  std::size_t repeats = 5;
  /// Informational speedup threshold, checked only when M_N >= 4096.
  double min_speedup = 10.0;
};

struct ExperimentConfig {
  RadixSequence radix = RadixSequence::constant(2, 6);
  /// Extra radix sequences for kernel-scan; empty means {radix}.
  std::vector<RadixSequence> radices;
  std::vector<double> alphas{0.25, 0.5, 0.75};
  FunctionSpec function;
  Schedule schedule;
  std::filesystem::path out = "out";
  std::uint64_t seed = 1;
  /// Empty selects every suite.
  std::vector<std::string> suites;
  Index max_cells = Index{1} << 22;
  TrendSpec trend;
  nlohmann::json young = {{"kind", "power"}, {"p", 2.0}};
  KernelScanSpec kernel_scan;
  BenchSpec bench;
  /// Added to the last Cesaro kernel weight in the route suite. Nonzero
  /// only in negative-control fixtures.
  double kernel_weight_offset = 0.0;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
  /// Directory relative paths in the config resolve against.
  std::filesystem::path base_dir = ".";

  std::vector<RadixSequence> scan_radices() const;
  bool suite_selected(const std::string& name) const;
};

/// Accepts [m_0, ...], {"constant": m, "length": N}, or
/// {"pattern": [...], "length": N} / {"pattern": [...], "repeat": r}.
RadixSequence parse_radix(const nlohmann::json& j);
/// {"kind": "power", "p": 2} or {"kind": "table", "u": [...], "M": [...]}.
YoungFunction parse_young(const nlohmann::json& j);

/// Throws ConfigError on unknown keys, wrong types or inconsistent values.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Echo of the effective configuration, written next to every output.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Builds the number system and enforces the memory cap.
NumberSystem make_number_system(const RadixSequence& radix, Index max_cells);

StepFunction make_function(const FunctionSpec& spec, const NumberSystem& ns,
                           std::uint64_t seed,
                           const std::filesystem::path& base_dir);
/// Compact "key=value;..." description of the family parameters.
std::string describe(const FunctionSpec& spec);

/// Sorted, de-duplicated orders within [1, M_N].
std::vector<Index> schedule_points(const Schedule& s, const NumberSystem& ns);

/// Canonical suite names accepted by verify.
const std::vector<std::string>& verify_suites();

}  // namespace vilenkin::cli
