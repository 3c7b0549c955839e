#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>

#include <fmt/format.h>

#include "common.hpp"
#include "vilenkin/bounds.hpp"
#include "vilenkin/cli/csv.hpp"
#include "vilenkin/cli/parallel.hpp"
#include "vilenkin/error.hpp"
#include "vilenkin/families.hpp"
#include "vilenkin/io.hpp"
#include "vilenkin/oscillation.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin::cli {

namespace detail {

void prepare_output(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
}

void write_report(const RunReport& report, const ExperimentConfig& cfg,
                  const std::filesystem::path& file) {
  write_json_file(report.to_json(cfg), file);
}

}  // namespace detail

namespace {

std::string alpha_tag(double a) { return fmt::format("alpha={}", format_number(a)); }

bool is_scale(const NumberSystem& ns, Index n) {
  return ns.block(ns.leading_position(n)) == n;
}

}  // namespace

RunReport run_converge(const ExperimentConfig& cfg) {
  const NumberSystem ns = make_number_system(cfg.radix, cfg.max_cells);
  const StepFunction f = make_function(cfg.function, ns, cfg.seed, cfg.base_dir);
  const std::vector<Index> points = schedule_points(cfg.schedule, ns);
  detail::prepare_output(cfg.out);
  const std::size_t N = ns.resolution();

  struct Item {
    double alpha;
    Index n;
    double error = 0.0;
  };
  std::vector<Item> items;
  for (double a : cfg.alphas)
    for (Index n : points) items.push_back({a, n});
  parallel_for(items.size(), worker_count(cfg.threads), [&](std::size_t i) {
    items[i].error = sup_distance(cesaro_mean(f, items[i].n, items[i].alpha), f);
  });

  CsvWriter csv(cfg.out / "converge.csv",
                {"family", "params", "alpha", "n", "k", "is_scale", "sup_error",
                 "theorem2_partial", "theorem1_condition", "verdict"});
  RunReport report{"converge"};
  const std::string params = describe(cfg.function);
  std::size_t cursor = 0;
  for (double a : cfg.alphas) {
    const SeriesReport series = theorem2_series(f, a, N);
    std::vector<double> condition(N, 0.0);
    for (std::size_t k = 0; k < N; ++k) condition[k] = theorem1_condition(f, k, a);

    std::vector<std::pair<std::size_t, double>> scale_errors;
    std::optional<std::pair<double, double>> previous;  // (condition, error)
    for (Index n : points) {
      const Item& item = items[cursor++];
      const std::size_t k = ns.leading_position(n);
      const bool scale = is_scale(ns, n);
      const std::optional<double> partial =
          k >= 1 ? std::optional<double>(series.partial_sums[k - 1]) : std::nullopt;
      const std::optional<double> cond =
          k < N ? std::optional<double>(condition[k]) : std::nullopt;
      std::string verdict = "off_scale";
      if (scale) {
        scale_errors.emplace_back(k, item.error);
        if (!previous) {
          verdict = "start";
        } else {
          const bool hypothesis = !cond || *cond <= previous->first;
          const bool conclusion = item.error <= previous->second;
          verdict = hypothesis && conclusion ? "consistent"
                    : conclusion             ? "conclusion_only"
                    : hypothesis             ? "hypothesis_only"
                                             : "neither";
        }
        previous = {cond.value_or(0.0), item.error};
      }
      csv.row({cfg.function.family, params, a, n, static_cast<Index>(k), scale,
               item.error, partial, cond, verdict});
    }

    // Trend over the scale points only.
    const std::string tag = alpha_tag(a);
    const std::size_t T = cfg.trend.trailing_scales;
    if (scale_errors.size() < T) {
      throw ConfigError(fmt::format("schedule has {} scale points, trend needs {}",
                                    scale_errors.size(), T));
    }
    double worst_rise = 0.0;
    for (std::size_t i = scale_errors.size() - T + 1; i < scale_errors.size(); ++i) {
      worst_rise = std::max(worst_rise, scale_errors[i].second - scale_errors[i - 1].second);
    }
    SuiteResult trailing{fmt::format("converge/{}/trailing_nonincreasing", tag),
                         worst_rise <= 0.0, worst_rise, 0.0, T,
                         fmt::format("largest rise over the last {} scale points", T)};
    trailing.informational = !cfg.trend.enforce;
    report.suites.push_back(trailing);

    const auto ref = std::find_if(scale_errors.begin(), scale_errors.end(), [&](auto& e) {
      return e.first == cfg.trend.reference_scale;
    });
    const auto& reference = ref == scale_errors.end() ? scale_errors.front() : *ref;
    const double final_error = scale_errors.back().second;
    const double ratio = reference.second == 0.0
                             ? (final_error == 0.0 ? 0.0 : INFINITY)
                             : final_error / reference.second;
    SuiteResult shrink{fmt::format("converge/{}/final_ratio", tag),
                       ratio <= cfg.trend.final_ratio, ratio, cfg.trend.final_ratio, 1,
                       fmt::format("error at M_{} over error at M_{}",
                                   scale_errors.back().first, reference.first)};
    shrink.informational = !cfg.trend.enforce;
    report.suites.push_back(shrink);

    report.suites.push_back(detail::informational(
        fmt::format("converge/{}/theorem2_increments_nonincreasing", tag),
        series.terms_nonincreasing() ? 1.0 : 0.0,
        fmt::format("partial sum at K={}: {}", N, format_number(series.total()))));

    report.data[tag] = {{"final_error", final_error},
                        {"reference_error", reference.second},
                        {"theorem2_terms", series.terms},
                        {"theorem2_partial_sums", series.partial_sums},
                        {"theorem1_condition", condition}};
  }
  report.data["family"] = cfg.function.family;
  report.data["params"] = params;
  detail::write_report(report, cfg, cfg.out / "converge.json");
  return report;
}

RunReport run_kernel_scan(const ExperimentConfig& cfg) {
  const auto& spec = cfg.kernel_scan;
  detail::prepare_output(cfg.out);

  struct Row {
    std::string scan;
    Index n;
    std::optional<double> alpha;
    std::optional<double> scale;
    double ratio;
    Index argmax;
  };
  struct Job {
    RadixSequence radix;
    std::string lemma;
    std::optional<double> alpha;
    std::vector<Row> rows;
    std::vector<double> ordered;  // stability input
    std::string order_by;
    std::optional<double> growth;  // lemma 4 only
    std::optional<double> reference_max;
  };

  std::vector<Job> jobs;
  for (const auto& radix : cfg.scan_radices()) {
    make_number_system(radix, cfg.max_cells);
    for (const auto& lemma : spec.lemmas) {
      if (lemma == "lemma4") {
        jobs.push_back({radix, lemma, std::nullopt});
        continue;
      }
      for (double a : cfg.alphas) jobs.push_back({radix, lemma, a});
    }
  }

  parallel_for(jobs.size(), worker_count(cfg.threads), [&](std::size_t i) {
    Job& job = jobs[i];
    const NumberSystem ns = build_number_system(job.radix);
    const std::size_t N = ns.resolution();
    if (job.lemma == "lemma2") {
      const Index last = spec.lemma2_last == 0 ? ns.size() : std::min(spec.lemma2_last, ns.size());
      for (const auto& r : lemma2_ratio_scan(ns, *job.alpha, 1, last)) {
        job.rows.push_back({"lemma2", r.n, job.alpha, std::nullopt, r.sup_ratio, r.argmax_cell});
        job.ordered.push_back(r.sup_ratio);
      }
      job.order_by = "n";
    } else if (job.lemma == "lemma3") {
      for (std::size_t k = 1; k <= N; ++k) {
        double best = 0.0;
        for (const auto& r : lemma3_ratio_scan(ns, *job.alpha, k, 1, ns.block(k))) {
          job.rows.push_back({"lemma3", r.n, job.alpha, static_cast<double>(k), r.sup_ratio,
                              r.argmax_cell});
          best = std::max(best, r.sup_ratio);
        }
        job.ordered.push_back(best);
      }
      job.order_by = "k";
    } else if (job.lemma == "lemma4") {
      const Index last = std::min(spec.lemma4_max_n, ns.size());
      double reference = 0.0;
      for (Index n = 1; n <= last; ++n) {
        const double r = agaev_monte_carlo(ns, n, spec.lemma4_draws, cfg.seed + n);
        job.rows.push_back({"lemma4", n, std::nullopt, std::nullopt, r, 0});
        job.ordered.push_back(r);
        if (n <= spec.lemma4_reference_n) reference = std::max(reference, r);
      }
      job.reference_max = reference;
      job.order_by = "n";
    } else if (job.lemma == "lemma5") {
      const StepFunction f = make_function(cfg.function, ns, cfg.seed, cfg.base_dir);
      if (N < 2 + spec.lemma5_top_guard) {
        throw ConfigError(fmt::format("lemma5 on {} needs N >= {}", job.radix.label(),
                                      2 + spec.lemma5_top_guard));
      }
      for (std::size_t k = 1; k + 1 + spec.lemma5_top_guard <= N; ++k) {
        double best = 0.0;
        for (Index n = ns.block(k); n < ns.block(k + 1); ++n) {
          const TsitsiResult r = tsitsi_ratio(f, n, k, *job.alpha);
          job.rows.push_back({"lemma5", n, job.alpha, static_cast<double>(k), r.ratio,
                              r.argmax_cell});
          job.rows.push_back({"lemma5_per_level", n, job.alpha, static_cast<double>(k),
                              r.ratio_per_level, r.argmax_cell});
          best = std::max(best, r.ratio);
        }
        job.ordered.push_back(best);
      }
      job.order_by = "k";
    }
  });

  CsvWriter csv(cfg.out / "kernel_scan.csv",
                {"radix_spec", "n", "alpha", "scan_kind", "scale", "sup_ratio",
                 "argmax_cell_index"});
  RunReport report{"kernel_scan"};
  report.data["constants"] = nlohmann::json::array();
  for (const Job& job : jobs) {
    for (const Row& r : job.rows) {
      csv.row({job.radix.label(), r.n, r.alpha, r.scan, r.scale, r.ratio, r.argmax});
    }
    const HalfRangeStability h = half_range_stability(job.ordered);
    const std::string name = fmt::format(
        "kernel_scan/{}/{}{}", job.radix.label(), job.lemma,
        job.alpha ? "/" + alpha_tag(*job.alpha) : std::string());
    const double constant = *std::max_element(job.ordered.begin(), job.ordered.end());
    report.suites.push_back({name + "/stability", h.stable(spec.stability_factor), h.ratio(),
                             spec.stability_factor, job.ordered.size(),
                             fmt::format("upper-half max over lower-half max, ordered by {}",
                                         job.order_by)});
    nlohmann::json entry{{"radix", job.radix.label()},
                         {"scan", job.lemma},
                         {"empirical_constant", constant},
                         {"lower_half_max", h.lower_max},
                         {"upper_half_max", h.upper_max},
                         {"stability_ratio", h.ratio()},
                         {"ordered_by", job.order_by}};
    if (job.alpha) entry["alpha"] = *job.alpha;
    if (job.reference_max) {
      const double growth = constant / *job.reference_max;
      report.suites.push_back({name + "/growth", growth <= spec.lemma4_growth_factor, growth,
                               spec.lemma4_growth_factor, job.ordered.size(),
                               fmt::format("max ratio over the max for n <= {}",
                                           spec.lemma4_reference_n)});
      entry["reference_max"] = *job.reference_max;
    }
    report.data["constants"].push_back(entry);
  }
  detail::write_report(report, cfg, cfg.out / "kernel_scan.json");
  return report;
}

RunReport run_oscillation(const ExperimentConfig& cfg) {
  const NumberSystem ns = make_number_system(cfg.radix, cfg.max_cells);
  const StepFunction f = make_function(cfg.function, ns, cfg.seed, cfg.base_dir);
  const YoungFunction young = parse_young(cfg.young);
  detail::prepare_output(cfg.out);
  const std::size_t N = ns.resolution();
  const OscillationProfile profile = oscillation_profile(f);

  RunReport report{"oscillation"};
  detail::Tracker monotone("oscillation/omega_nonincreasing", 0.0);
  detail::Tracker nu("oscillation/nu_decomposition", 1e-12);
  detail::Tracker bounded("oscillation/coset_bounds", 0.0);
  detail::Tracker omega("oscillation/omega_is_max_coset", 1e-12);
  const double cap = 2.0 * f.sup_norm() * (1.0 + 1e-12);
  for (std::size_t k = 0; k <= N; ++k) {
    if (k > 0) monotone.observe(profile.omega[k] > profile.omega[k - 1] ? 1.0 : 0.0);
    double widest = 0.0;
    for (Index beta = 0; beta < ns.block(k); ++beta) {
      const double w = coset_oscillation(f, k, beta);
      bounded.observe(w >= 0.0 && w <= cap ? 0.0 : 1.0);
      widest = std::max(widest, w);
    }
    nu.observe(std::abs(profile.nu[k] - profile.O[k] - coset_oscillation(f, k, 0)));
    omega.observe(std::abs(profile.omega[k] - widest));
  }
  for (auto* t : {&monotone, &nu, &bounded, &omega}) report.suites.push_back(t->finish());

  CsvWriter csv(cfg.out / "oscillation.csv",
                {"alpha", "k", "M_k", "omega_k", "O_k", "nu_k", "theorem2_term"});
  report.data["bo_score"] = profile.bo_score();
  report.data["bo_m_score"] = bo_m_score(f, young);
  report.data["young"] = cfg.young;
  for (double a : cfg.alphas) {
    for (std::size_t k = 0; k <= N; ++k) {
      const std::optional<double> term =
          k >= 1 ? std::optional<double>(profile.nu[k] /
                                         std::pow(static_cast<double>(ns.block(k)), 1.0 - a))
                 : std::nullopt;
      csv.row({a, static_cast<Index>(k), ns.block(k), profile.omega[k], profile.O[k],
               profile.nu[k], term});
    }
    const SeriesReport t2 = theorem2_series(f, a, N);
    const SeriesReport cor = corollary_series(young, ns, a, N);
    std::vector<double> condition(N);
    for (std::size_t k = 0; k < N; ++k) condition[k] = theorem1_condition(f, k, a);
    const std::string verdict = cor.geometric_decay() ? "convergent"
                                : cor.nondecreasing() ? "divergent"
                                                      : "undecided";
    report.data[alpha_tag(a)] = {{"theorem1_condition", condition},
                                 {"theorem2_partial_sums", t2.partial_sums},
                                 {"theorem2_terms_nonincreasing", t2.terms_nonincreasing()},
                                 {"corollary_terms", cor.terms},
                                 {"corollary_partial_sums", cor.partial_sums},
                                 {"corollary_verdict", verdict}};
  }
  detail::write_report(report, cfg, cfg.out / "oscillation.json");
  return report;
}

RunReport run_bench(const ExperimentConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const NumberSystem ns = make_number_system(cfg.radix, cfg.max_cells);
  detail::prepare_output(cfg.out);
  const StepFunction f = random_cells(ns, cfg.seed, true);

  const CoefficientVector fast = forward(f, TransformStrategy::fast);
  const CoefficientVector naive = forward(f, TransformStrategy::naive);
  double diff = 0.0;
  for (Index k = 0; k < ns.size(); ++k) diff = std::max(diff, std::abs(fast[k] - naive[k]));

  RunReport report{"bench"};
  report.suites.push_back({"bench/equality", diff <= 1e-10, diff, 1e-10, ns.size(), ""});
  if (!report.suites.back().passed) {
    detail::write_report(report, cfg, cfg.out / "bench.json");
    return report;
  }

  auto median_seconds = [&](TransformStrategy s) {
    std::vector<double> times;
    for (std::size_t r = 0; r < cfg.bench.repeats; ++r) {
      const auto t0 = Clock::now();
      const CoefficientVector c = forward(f, s);
      const auto t1 = Clock::now();
      if (c.size() != ns.size()) throw Error("transform size mismatch");
      times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
  };
  const double t_naive = median_seconds(TransformStrategy::naive);
  const double t_fast = median_seconds(TransformStrategy::fast);
  const double speedup = t_naive / std::max(t_fast, 1e-12);

  SuiteResult timing{"bench/speedup", speedup >= cfg.bench.min_speedup, speedup,
                     cfg.bench.min_speedup, cfg.bench.repeats,
                     ns.size() >= 4096 ? "median wall time, naive over fast"
                                       : "below 4096 cells: not asserted"};
  timing.informational = true;
  report.suites.push_back(timing);
  report.data = {{"radix", ns.radix().label()},
                 {"cells", ns.size()},
                 {"repeats", cfg.bench.repeats},
                 {"naive_median_seconds", t_naive},
                 {"fast_median_seconds", t_fast},
                 {"speedup", speedup},
                 {"max_difference", diff}};
  detail::write_report(report, cfg, cfg.out / "bench.json");
  return report;
}

}  // namespace vilenkin::cli
