#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vilenkin/cli/config.hpp"
#include "vilenkin/cli/csv.hpp"
#include "vilenkin/cli/runners.hpp"
#include "vilenkin/error.hpp"

namespace {

using namespace vilenkin;
using namespace vilenkin::cli;

constexpr int kConfigError = 2;

void print(const RunReport& report) {
  for (const auto& s : report.suites) {
    const char* status = s.passed ? "PASS" : (s.informational ? "NOTE" : "FAIL");
    std::cout << fmt::format("{} {} value={} threshold={} checks={}", status, s.name,
                             format_number(s.value), format_number(s.threshold), s.checks);
    if (!s.detail.empty()) std::cout << " (" << s.detail << ')';
    std::cout << '\n';
  }
  std::cout << fmt::format("{}: {}\n", report.command, report.passed() ? "passed" : "FAILED");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier analysis on bounded Vilenkin groups"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path, out_dir, suites;
  std::optional<std::uint64_t> seed;
  std::optional<Index> max_cells;
  std::optional<std::size_t> threads;
  app.add_option("--config", config_path, "JSON experiment config")->envname("VILENKIN_CONFIG");
  app.add_option("--out", out_dir, "Output directory")->envname("VILENKIN_OUT");
  app.add_option("--seed", seed, "Seed for random families")->envname("VILENKIN_SEED");
  app.add_option("--suites", suites, "Comma-separated verify suites")->envname("VILENKIN_SUITES");
  app.add_option("--max-cells", max_cells, "Cap on M_N")->envname("VILENKIN_MAX_CELLS");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->envname("VILENKIN_THREADS");

  auto* verify = app.add_subcommand("verify", "Exact-identity suites");
  auto* converge = app.add_subcommand("converge", "Cesaro convergence experiment");
  auto* kernel_scan = app.add_subcommand("kernel-scan", "Bound-lemma ratio scans");
  auto* oscillation = app.add_subcommand("oscillation", "Oscillation profile");
  auto* bench = app.add_subcommand("bench", "Naive against fast transform timing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    ExperimentConfig cfg = config_path ? load_config(*config_path) : ExperimentConfig{};
    if (out_dir) cfg.out = *out_dir;
    if (seed) cfg.seed = *seed;
    if (max_cells) cfg.max_cells = *max_cells;
    if (threads) cfg.threads = *threads;
    if (suites) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& s : CLI::detail::split(*suites, ',')) {
        if (!s.empty()) list.push_back(CLI::detail::trim_copy(s));
      }
      cfg.suites = parse_config({{"suites", list}}).suites;
    }

    RunReport report;
    if (verify->parsed()) report = run_verify(cfg);
    else if (converge->parsed()) report = run_converge(cfg);
    else if (kernel_scan->parsed()) report = run_kernel_scan(cfg);
    else if (oscillation->parsed()) report = run_oscillation(cfg);
    else if (bench->parsed()) report = run_bench(cfg);
    print(report);
    return report.exit_code();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kConfigError;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
