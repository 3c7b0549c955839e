// Acceptance criteria 1-11. One PASS/FAIL line per criterion; exit 0 only
// when all pass.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "oracle.hpp"
#include "vilenkin/binomials.hpp"
#include "vilenkin/cli/config.hpp"
#include "vilenkin/cli/csv.hpp"
#include "vilenkin/cli/runners.hpp"
#include "vilenkin/families.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/oscillation.hpp"
#include "vilenkin/transform.hpp"

using namespace vilenkin;
using namespace vilenkin::cli;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) { return format_number(v); }

const std::vector<std::vector<unsigned>> kIdentityRadices{std::vector<unsigned>(6, 2),
                                                          {2, 3, 4, 2}};

std::string label(const std::vector<unsigned>& m) { return RadixSequence(m).label(); }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "vilenkin_acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Outcome exact_identities() {
  Outcome out;
  const auto start = Clock::now();
  for (const auto& m : kIdentityRadices) {
    const auto ns = build_number_system(RadixSequence(m));
    const RecursionReport r = verify_dirichlet_recursions(ns, ns.size());
    const double worst = std::max({r.split, r.shift, r.geometric, r.reflection, r.product_form});
    out.require(worst <= 1e-9, label(m) + " residual " + num(worst));
    out.note(fmt::format("{} M_N={} max residual {} over {} tuples", label(m), ns.size(),
                         num(worst), r.tuples));
  }
  const double elapsed = seconds_since(start);
  out.require(elapsed <= 60.0, "runtime " + num(elapsed) + " s");
  return out;
}

Outcome lemma1_exactness() {
  Outcome out;
  for (const auto& m : kIdentityRadices) {
    const auto ns = build_number_system(RadixSequence(m));
    const auto table = dirichlet_sequence(ns, ns.size());
    double worst = 0.0;
    for (double a : {0.25, 0.5, 0.75})
      for (Index n = 1; n <= ns.size(); ++n) worst = std::max(worst, lemma1_residual(table, n, a));
    out.require(worst <= 1e-9, label(m) + " residual " + num(worst));
    out.note(label(m) + " max residual " + num(worst));
  }
  return out;
}

Outcome closed_form_and_means() {
  Outcome out;
  for (const auto& m : kIdentityRadices) {
    const auto ns = build_number_system(RadixSequence(m));
    bool exact = true;
    for (std::size_t k = 0; k <= m.size(); ++k) {
      const auto d = dirichlet(ns, ns.block(k), KernelStrategy::naive);
      for (Index x = 0; x < ns.size(); ++x) {
        const double expected = oracle::in_I(x, k, m) ? static_cast<double>(ns.block(k)) : 0.0;
        exact &= std::abs(d[x] - expected) <= 1e-9;
      }
    }
    double worst_mean = 0.0;
    const auto seq = dirichlet_sequence(ns, ns.size());
    for (Index n = 1; n <= ns.size(); ++n) worst_mean = std::max(worst_mean, std::abs(seq[n].mean() - 1.0));
    out.require(exact, label(m) + " D_{M_k} differs from M_k 1_{I_k}");
    out.require(worst_mean <= 1e-10, label(m) + " mean deviation " + num(worst_mean));
    out.note(label(m) + " mean deviation " + num(worst_mean));
  }
  return out;
}

Outcome orthonormality() {
  Outcome out;
  const std::vector<unsigned> m{2, 4, 4, 2, 4};
  const auto ns = build_number_system(RadixSequence(m));
  const CharacterSystem chars(ns);
  std::vector<std::vector<Complex>> rows;
  for (Index n = 0; n < ns.size(); ++n) rows.push_back(chars.row(n));
  double gram = 0.0;
  for (Index j = 0; j < ns.size(); ++j) {
    for (Index k = j; k < ns.size(); ++k) {
      Complex acc = 0.0;
      for (Index x = 0; x < ns.size(); ++x) acc += rows[j][x] * std::conj(rows[k][x]);
      gram = std::max(gram, std::abs(acc / static_cast<double>(ns.size()) - (j == k ? 1.0 : 0.0)));
    }
  }
  double parseval = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto f = random_cells(ns, 500 + s, s % 2 == 1);
    double energy = 0.0;
    for (Complex v : f.cells()) energy += std::norm(v);
    parseval = std::max(parseval, std::abs(forward(f).energy() - energy / ns.size()));
  }
  out.require(gram <= 1e-10, "Gram deviation " + num(gram));
  out.require(parseval <= 1e-9, "Parseval deviation " + num(parseval));
  out.note(fmt::format("M_N={} Gram deviation {}, Parseval deviation {} over 50 functions",
                       ns.size(), num(gram), num(parseval)));
  return out;
}

Outcome binomial_identities() {
  Outcome out;
  double worst = 0.0;
  for (double a : {-0.9, -0.75, -0.5, -0.25, 0.25, 0.5, 0.75, 0.9}) {
    const AIdentityReport r = verify_a_identities(10000, a);
    worst = std::max({worst, r.difference_relative, r.summation_relative});
  }
  out.require(worst <= 1e-10, "A3 relative residual " + num(worst));
  out.note("A3 relative residual " + num(worst) + " to n=10^4");
  for (double a : {-0.5, 0.5}) {
    const double gap = std::abs(verify_a_asymptotic(a, 10000) - std::pow(2.0, -a));
    out.require(gap <= 0.01, fmt::format("ratio gap {} at alpha={}", num(gap), a));
    out.note(fmt::format("alpha={} ratio gap {}", a, num(gap)));
  }
  return out;
}

Outcome route_equivalence() {
  Outcome out;
  for (const auto& m : kIdentityRadices) {
    const auto ns = build_number_system(RadixSequence(m));
    const auto f = random_cells(ns, 2024, true);
    double worst = 0.0;  // largest residual divided by n
    for (double a : {0.25, 0.5, 0.75}) {
      for (Index n = 1; n <= std::min<Index>(64, ns.size()); ++n) {
        const auto c = cesaro_mean(f, n, a, CesaroRoute::coefficients);
        const double p = sup_distance(c, cesaro_mean(f, n, a, CesaroRoute::partial_sums));
        const double k = sup_distance(c, cesaro_mean(f, n, a, CesaroRoute::convolution));
        worst = std::max(worst, std::max(p, k) / static_cast<double>(n));
      }
    }
    out.require(worst <= 1e-9, label(m) + " residual/n " + num(worst));
    out.note(label(m) + " max residual/n " + num(worst));
  }
  return out;
}

Outcome from_report(const RunReport& report) {
  Outcome out;
  for (const auto& s : report.suites) {
    if (s.informational) continue;
    out.require(s.passed, fmt::format("{} = {} (threshold {})", s.name, num(s.value), num(s.threshold)));
  }
  return out;
}

double worst_value(const RunReport& report, const std::string& suffix) {
  double worst = 0.0;
  for (const auto& s : report.suites) {
    if (s.name.size() >= suffix.size() &&
        s.name.compare(s.name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      worst = std::max(worst, s.value);
    }
  }
  return worst;
}

Outcome bound_stability() {
  Outcome out;
  ExperimentConfig base;
  base.threads = 0;
  base.function = {"lacunary", {{"s", 1.0}}};

  ExperimentConfig l23 = base;
  l23.radices = {RadixSequence::constant(2, 8), RadixSequence::constant(3, 5),
                 RadixSequence({2, 3, 4, 2})};
  l23.kernel_scan.lemmas = {"lemma2", "lemma3"};
  l23.out = scratch("c7_lemma23");

  ExperimentConfig l4 = base;
  l4.radices = {RadixSequence::constant(2, 8), RadixSequence({2, 3, 4, 2, 3})};
  l4.kernel_scan.lemmas = {"lemma4"};
  l4.out = scratch("c7_lemma4");

  ExperimentConfig l5 = base;
  l5.radices = {RadixSequence::constant(2, 12), RadixSequence::constant(3, 7)};
  l5.kernel_scan.lemmas = {"lemma5"};
  l5.out = scratch("c7_lemma5");

  for (const auto* cfg : {&l23, &l4, &l5}) {
    const RunReport r = run_kernel_scan(*cfg);
    const Outcome o = from_report(r);
    out.require(o.passed, o.detail);
    // Finite ratios everywhere.
    std::ifstream csv(cfg->out / "kernel_scan.csv");
    std::string line;
    std::size_t rows = 0, bad = 0;
    std::getline(csv, line);
    while (std::getline(csv, line)) {
      ++rows;
      bad += line.find("inf") != std::string::npos || line.find("nan") != std::string::npos;
    }
    out.require(bad == 0, fmt::format("{} non-finite rows", bad));
    out.note(fmt::format("{}: {} rows, worst stability {}", cfg->kernel_scan.lemmas.front(),
                         rows, num(worst_value(r, "/stability"))));
    if (cfg == &l4) out.note("lemma4 growth " + num(worst_value(r, "/growth")));
  }
  return out;
}

Outcome convergence_demo() {
  Outcome out;
  const auto start = Clock::now();
  ExperimentConfig cfg;
  cfg.radix = RadixSequence::constant(2, 10);
  cfg.alphas = {0.5};
  cfg.function = {"lacunary", {{"s", 1.0}}};
  cfg.out = scratch("c8");
  const RunReport r = run_converge(cfg);
  const Outcome o = from_report(r);
  out.require(o.passed, o.detail);
  const auto& data = r.data.at("alpha=0.5");
  const double ratio = data.at("final_error").get<double>() / data.at("reference_error").get<double>();
  out.require(ratio <= 0.25, "final ratio " + num(ratio));

  const auto ns = build_number_system(cfg.radix);
  const auto f = lacunary(ns, inverse_scale_coefficients(ns, 1.0));
  const SeriesReport s = theorem2_series(f, 0.5, ns.resolution());
  out.require(s.terms_nonincreasing(), "theorem2 increments not decreasing");
  const double elapsed = seconds_since(start);
  out.require(elapsed <= 300.0, "runtime " + num(elapsed) + " s");
  out.note(fmt::format("sup_error M_9/M_2 = {}, trailing rise {}, theorem2 partial sum {}",
                       num(ratio), num(worst_value(r, "/trailing_nonincreasing")),
                       num(s.total())));
  return out;
}

Outcome hypothesis_evaluators() {
  Outcome out;
  for (const auto& m : kIdentityRadices) {
    const auto ns = build_number_system(RadixSequence(m));
    const auto constant = StepFunction::constant(ns, Complex(0.7, -0.3));
    const auto indicator = digit_indicator(ns, 1, 0);
    // Arbitrary values that depend on x_0 only.
    const auto coarse = StepFunction::from_cells(
        ns, [&](Index x) { return Complex(std::sin(1.0 + x % m[0]), std::cos(3.0 * (x % m[0]))); });
    for (std::size_t k = 0; k < m.size(); ++k) {
      for (double a : {0.25, 0.5, 0.75}) {
        out.require(theorem1_condition(constant, k, a) == 0.0, label(m) + " constant");
        if (k >= 1) {
          out.require(theorem1_condition(indicator, k, a) == 0.0, label(m) + " I_1 indicator");
          out.require(theorem1_condition(coarse, k, a) == 0.0, label(m) + " I_1-measurable f");
        }
      }
    }
  }
  const auto ns = build_number_system(RadixSequence::constant(2, 12));
  const auto M = YoungFunction::power(2.0);
  const auto lo = corollary_series(M, ns, 0.25, 12);
  const auto hi = corollary_series(M, ns, 0.75, 12);
  out.require(lo.geometric_decay(), "p=2 alpha=0.25 not flagged convergent");
  out.require(hi.nondecreasing(), "p=2 alpha=0.75 not flagged divergent");
  out.note(fmt::format("p=2 term ratio {} at alpha=0.25, {} at alpha=0.75",
                       num(lo.max_term_ratio()), num(hi.min_term_ratio())));
  return out;
}

Outcome performance() {
  Outcome out;
  ExperimentConfig cfg;
  cfg.radix = RadixSequence::constant(2, 12);
  cfg.out = scratch("c10");
  const RunReport r = run_bench(cfg);
  for (const auto& s : r.suites) {
    if (s.name == "bench/equality") out.require(s.passed, "max difference " + num(s.value));
    if (s.name == "bench/speedup") out.require(s.value >= 10.0, "speedup " + num(s.value));
  }
  out.note(fmt::format("M_N=4096 speedup {}, max difference {}",
                       num(r.data.at("speedup").get<double>()),
                       num(r.data.at("max_difference").get<double>())));
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome reproducibility() {
  Outcome out;
  ExperimentConfig cfg;
  cfg.radix = RadixSequence({2, 3, 4, 2});
  cfg.function = {"random", {{"complex", false}}};
  cfg.seed = 11;
  cfg.trend.enforce = false;
  cfg.trend.trailing_scales = 3;
  cfg.kernel_scan.lemmas = {"lemma2", "lemma3", "lemma4"};
  cfg.kernel_scan.lemma4_max_n = 32;
  cfg.kernel_scan.lemma4_reference_n = 8;
  const fs::path a = scratch("c11_a"), b = scratch("c11_b");
  for (const auto& dir : {a, b}) {
    cfg.out = dir;
    run_verify(cfg);
    run_converge(cfg);
    run_kernel_scan(cfg);
    run_oscillation(cfg);
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    const auto name = entry.path().filename();
    out.require(fs::exists(b / name) && slurp(entry.path()) == slurp(b / name),
                name.string() + " differs");
  }
  out.require(files == 7, fmt::format("{} output files", files));
  out.note(fmt::format("{} CSV/JSON files byte-identical", files));
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact Dirichlet identities", exact_identities},
      {"Lemma 1 decomposition", lemma1_exactness},
      {"closed form and kernel means", closed_form_and_means},
      {"orthonormality and Parseval", orthonormality},
      {"binomial identities", binomial_identities},
      {"Cesaro route equivalence", route_equivalence},
      {"bound-lemma stability", bound_stability},
      {"convergence demonstration", convergence_demo},
      {"hypothesis evaluators", hypothesis_evaluators},
      {"transform performance", performance},
      {"reproducibility", reproducibility},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all &= o.passed;
    std::cout << fmt::format("{} criterion {}: {} ({})", o.passed ? "PASS" : "FAIL", i + 1,
                             criteria[i].first, o.detail)
              << std::endl;
  }
  return all ? 0 : 1;
}
