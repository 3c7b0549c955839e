#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "common.hpp"
#include "vilenkin/binomials.hpp"
#include "vilenkin/characters.hpp"
#include "vilenkin/families.hpp"
#include "vilenkin/io.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin::cli {

namespace {

using detail::Tracker;

// Exhaustive loops switch to seeded sampling above these sizes.
constexpr Index kExhaustiveTriples = 64;
constexpr std::size_t kSampledTriples = 20000;
constexpr Index kExhaustiveGram = 512;
constexpr Index kExhaustiveKernels = 1024;
constexpr Index kRouteOrders = 256;

struct Sampler {
  explicit Sampler(std::uint64_t seed) : rng(seed) {}
  Index cell(const NumberSystem& ns) {
    return std::uniform_int_distribution<Index>(0, ns.size() - 1)(rng);
  }
  std::mt19937_64 rng;
};

/// Calls body(x, y, z) over all triples of cells, or over a seeded sample.
template <typename Body>
void for_triples(const NumberSystem& ns, std::uint64_t seed, Body&& body) {
  if (ns.size() <= kExhaustiveTriples) {
    for (Index x = 0; x < ns.size(); ++x)
      for (Index y = 0; y < ns.size(); ++y)
        for (Index z = 0; z < ns.size(); ++z) body(x, y, z);
    return;
  }
  Sampler s(seed);
  for (std::size_t i = 0; i < kSampledTriples; ++i) {
    const Index x = s.cell(ns), y = s.cell(ns), z = s.cell(ns);
    body(x, y, z);
  }
}

void group_suite(const NumberSystem& ns, std::uint64_t seed,
                 std::vector<SuiteResult>& out) {
  Tracker laws("group/laws", 0.0);
  for_triples(ns, seed, [&](Index x, Index y, Index z) {
    bool ok = ns.add(ns.add(x, y), z) == ns.add(x, ns.add(y, z));
    ok = ok && ns.add(x, y) == ns.add(y, x);
    ok = ok && ns.add(x, 0) == x && ns.add(x, ns.neg(x)) == 0;
    ok = ok && ns.sub(x, y) == ns.add(x, ns.neg(y));
    laws.observe(ok ? 0.0 : 1.0);
  });
  Sampler s(seed + 1);
  for (std::size_t i = 0; i < 256; ++i) {
    const Index x = s.cell(ns), y = s.cell(ns);
    const auto gx = GroupElement::from_cell(ns, x);
    const auto gy = GroupElement::from_cell(ns, y);
    laws.observe((gx + gy).cell() == ns.add(x, y) && (-gx).cell() == ns.neg(x) ? 0.0 : 1.0);
  }
  laws.set_detail(ns.size() <= kExhaustiveTriples ? "exhaustive" : "sampled");
  out.push_back(laws.finish());

  Tracker partition("group/partition", 0.0);
  for (std::size_t k = 0; k <= ns.resolution(); ++k) {
    const Index Mk = ns.block(k);
    std::vector<Index> count(Mk, 0);
    for (Index x = 0; x < ns.size(); ++x) {
      const CosetIndex c = coset_of(ns, x, k);
      ++count[c.beta];
      partition.observe(coset_cell(ns, c.beta, k) == x % Mk ? 0.0 : 1.0);
    }
    for (Index beta = 0; beta < Mk; ++beta) {
      partition.observe(count[beta] == ns.size() / Mk ? 0.0 : 1.0);
    }
  }
  out.push_back(partition.finish());

  Tracker round_trip("group/round_trip", 0.0);
  for (Index n = 0; n < ns.size(); ++n) {
    round_trip.observe(ns.index_of(ns.digits_of(n)) == n ? 0.0 : 1.0);
  }
  out.push_back(round_trip.finish());

  Tracker bracket("group/coset_bracket", 0.0);
  for (std::size_t k = 1; k <= ns.resolution() && ns.block(k) <= 4096; ++k) {
    const Index Mk = ns.block(k);
    for (Index beta = 1; beta < Mk; ++beta) {
      const std::size_t q = ns.first_nonzero(coset_cell(ns, beta, k));
      const bool ok = Mk / ns.block(q + 1) <= beta && beta <= Mk / ns.block(q) - 1;
      bracket.observe(ok ? 0.0 : 1.0);
    }
  }
  out.push_back(bracket.finish());
}

void characters_suite(const NumberSystem& ns, std::uint64_t seed,
                      std::vector<SuiteResult>& out) {
  const CharacterSystem chars(ns);
  const Index M = ns.size();

  Tracker unimodular("characters/unimodular", 1e-12);
  const Index rows = std::min<Index>(M, 2048);
  for (Index n = 0; n < rows; ++n) {
    for (Index x = 0; x < M; ++x) unimodular.observe(std::abs(std::abs(chars(n, x)) - 1.0));
  }
  out.push_back(unimodular.finish());

  Tracker law("characters/law", 1e-12);
  for_triples(ns, seed, [&](Index n, Index x, Index y) {
    law.observe(std::abs(chars(n, ns.add(x, y)) - chars(n, x) * chars(n, y)));
  });
  out.push_back(law.finish());

  Tracker gram("characters/orthonormality", 1e-10);
  std::vector<std::vector<Complex>> table;
  std::vector<Index> picked;
  if (M <= kExhaustiveGram) {
    for (Index n = 0; n < M; ++n) picked.push_back(n);
  } else {
    Sampler s(seed + 2);
    for (int i = 0; i < 32; ++i) picked.push_back(s.cell(ns));
  }
  for (Index j : picked) {
    const auto rj = chars.row(j);
    for (Index k = 0; k < M; ++k) {
      Complex acc = 0.0;
      for (Index x = 0; x < M; ++x) acc += rj[x] * std::conj(chars(k, x));
      acc /= static_cast<double>(M);
      gram.observe(std::abs(acc - (j == k ? 1.0 : 0.0)));
    }
  }
  gram.set_detail(M <= kExhaustiveGram ? "full Gram matrix" : "32 sampled rows");
  out.push_back(gram.finish());

  Tracker truk("characters/truk", 1e-12);
  Tracker truk1("characters/truk1", 1e-12);
  Tracker truk1_lower("characters/truk1_lower_bound", 0.0);
  const double floor = 2.0 * std::sin(std::numbers::pi / ns.radix().max_radix());
  for (std::size_t k = 0; k < ns.resolution(); ++k) {
    const unsigned mk = ns.base(k);
    for (unsigned nk = 1; nk < mk; ++nk) {
      // psi_{M_k}^{-n_k}(e_k) = r_k^{-n_k}(e_k).
      const Complex at_unit = chars.root(k, mk - nk);
      for (Index t = 0; t < M; ++t) {
        truk.observe(std::abs(at_unit * chars.rademacher_power(k, nk, t) -
                              chars.rademacher_power(k, nk, ns.sub(t, ns.block(k)))));
      }
      const double distance = std::abs(1.0 - at_unit);
      truk1.observe(std::abs(distance - 2.0 * std::abs(std::sin(std::numbers::pi * nk / mk))));
      truk1_lower.observe(distance >= floor - 1e-12 ? 0.0 : 1.0);
    }
  }
  out.push_back(truk.finish());
  out.push_back(truk1.finish());
  out.push_back(truk1_lower.finish());

  if (ns.radix().is_walsh()) {
    Tracker walsh("characters/walsh_sign", 0.0);
    for (Index n = 0; n < rows; ++n) {
      for (Index x = 0; x < M; ++x) {
        const Complex v = chars(n, x);
        walsh.observe(v.imag() == 0.0 && std::abs(v.real()) == 1.0 ? 0.0 : 1.0);
      }
    }
    out.push_back(walsh.finish());
  }
}

void binomials_suite(const std::vector<double>& alphas, std::vector<SuiteResult>& out) {
  constexpr Index kTop = 10000;
  std::vector<double> grid{-0.25, 0.25, -0.5, 0.5, -0.9, 0.9};
  for (double a : alphas) {
    grid.push_back(a);
    grid.push_back(-a);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  Tracker a3("binomials/A3", 1e-10);
  Tracker a1("binomials/A1", 1e-10);
  double shifted = 0.0;
  Tracker a2("binomials/A2_ratio", 0.0);
  for (double a : grid) {
    const AIdentityReport r = verify_a_identities(kTop, a);
    a3.observe(r.difference_relative);
    a1.observe(r.summation_relative);
    shifted = std::max(shifted, r.shifted_summation_absolute);
    for (Index n : {Index{100}, Index{1000}, kTop}) {
      const double gap = std::abs(verify_a_asymptotic(a, n) - std::pow(2.0, -a));
      const double bound = std::min(0.01, 5.0 / static_cast<double>(n));
      a2.observe(gap <= bound ? 0.0 : 1.0);
    }
  }
  a1.set_detail(fmt::format(
      "sum_(k=0..n) A_k^(a-1) = A_n^a; the k=0..n-1 display is off by {:.17g}", shifted));
  a2.set_detail("|A_n/A_2n - 2^-a| <= min(0.01, 5/n) at n = 100, 1000, 10000");
  out.push_back(a3.finish());
  out.push_back(a1.finish());
  out.push_back(a2.finish());

  Tracker sign("binomials/sign", 0.0);
  for (double a : alphas) {
    const CesaroTable lower(-a - 1.0, kTop);
    const CesaroTable base(-a, kTop);
    for (Index n = 1; n <= kTop; ++n) {
      const bool ok = lower[n] < 0.0 && base[n] > 0.0 && base[n] < base[n - 1];
      sign.observe(ok ? 0.0 : 1.0);
    }
  }
  sign.set_detail("A_n^(-a-1) < 0 and 0 < A_n^(-a) < A_(n-1)^(-a) for 1 <= n <= 10000");
  out.push_back(sign.finish());
}

void dirichlet_suite(const NumberSystem& ns, const std::vector<double>& alphas,
                     std::vector<SuiteResult>& out) {
  const Index top = std::min(ns.size(), kExhaustiveKernels);
  const RecursionReport r = verify_dirichlet_recursions(ns, top);
  Tracker rec("dirichlet/recursions", 1e-9);
  rec.observe(r.max_residual());
  rec.set_detail(fmt::format(
      "tuples={} split={:.3g} shift={:.3g} geometric={:.3g} reflection={:.3g} "
      "product_form={:.3g} closed_form={:.3g}; reflection with '+' sign: {:.3g}",
      r.tuples, r.split, r.shift, r.geometric, r.reflection, r.product_form,
      r.closed_form, r.reflection_plus_sign));
  out.push_back(rec.finish());

  const CharacterSystem chars(ns);
  Tracker agree("dirichlet/strategies", 1e-9);
  Tracker mean("dirichlet/mean", 1e-10);
  Tracker support("dirichlet/support", 1e-9);
  std::vector<Complex> running(ns.size(), 0.0);
  for (Index n = 1; n <= top; ++n) {
    for (Index x = 0; x < ns.size(); ++x) running[x] += chars(n - 1, x);
    const StepFunction naive(ns, running);
    const StepFunction recursive = dirichlet(ns, n, KernelStrategy::recursive);
    const double scale = static_cast<double>(n);
    agree.observe(sup_distance(naive, recursive) / scale);
    mean.observe(std::abs(naive.mean() - 1.0));
    const std::size_t A = ns.leading_position(n);
    if (A < ns.resolution()) {
      const Index block = ns.block(A + 1);
      for (Index x = 0; x < ns.size(); ++x) {
        support.observe(std::abs(naive[x] - naive[x % block]) / scale);
      }
    }
  }
  for (std::size_t k = 0; k <= ns.resolution() && ns.block(k) <= top; ++k) {
    const StepFunction closed = dirichlet(ns, ns.block(k), KernelStrategy::closed);
    const StepFunction naive = dirichlet(ns, ns.block(k), KernelStrategy::naive);
    agree.observe(sup_distance(naive, closed) / static_cast<double>(ns.block(k)));
  }
  agree.set_detail("naive against product form (per n) and closed form (n = M_k), divided by n");
  out.push_back(agree.finish());
  out.push_back(mean.finish());
  out.push_back(support.finish());

  Tracker kmean("dirichlet/kernel_means", 1e-10);
  const Index kernels = std::min(ns.size(), kRouteOrders);
  for (Index n = 1; n <= kernels; ++n) {
    kmean.observe(std::abs(fejer_kernel(ns, n).mean() - 1.0));
    for (double a : alphas) kmean.observe(std::abs(cesaro_kernel(ns, n, a).mean() - 1.0));
  }
  out.push_back(kmean.finish());
}

void lemma1_suite(const NumberSystem& ns, const std::vector<double>& alphas,
                  std::vector<SuiteResult>& out) {
  const Index top = std::min(ns.size(), kExhaustiveKernels);
  const auto D = dirichlet_sequence(ns, top);
  Tracker exact("lemma1/from_zero", 1e-9);
  double from_one = 0.0;
  std::size_t broken = 0, total = 0;
  for (double a : alphas) {
    for (Index n = 1; n <= top; ++n) {
      exact.observe(lemma1_residual(D, n, a, Lemma1Reading::from_zero));
      const double r = lemma1_residual(D, n, a, Lemma1Reading::from_one);
      from_one = std::max(from_one, r);
      broken += r > 1e-9 ? 1 : 0;
      ++total;
    }
  }
  exact.set_detail(fmt::format(
      "all n <= {}; starting the first sum at k=1 fails on {} of {} (n, alpha) with "
      "residual up to {:.6g}",
      top, broken, total, from_one));
  out.push_back(exact.finish());
}

void routes_suite(const NumberSystem& ns, const std::vector<double>& alphas,
                  std::uint64_t seed, double weight_offset,
                  std::vector<SuiteResult>& out) {
  const StepFunction f = random_cells(ns, seed, true);
  const CharacterSystem chars(ns);
  const Index top = std::min(ns.size(), kRouteOrders);
  Tracker partial("routes/partial_sums", 1e-9);
  Tracker conv("routes/convolution", 1e-9);
  Tracker constant("routes/constant", 1e-10);
  const StepFunction one = StepFunction::constant(ns, Complex(2.0, -1.0));
  for (double a : alphas) {
    for (Index n = 1; n <= top; ++n) {
      const double scale = static_cast<double>(n);
      const StepFunction by_coeffs = cesaro_mean(f, n, a, CesaroRoute::coefficients);
      partial.observe(
          sup_distance(by_coeffs, cesaro_mean(f, n, a, CesaroRoute::partial_sums)) / scale);
      StepFunction kernel = cesaro_kernel(ns, n, a);
      if (weight_offset != 0.0) {
        for (Index x = 0; x < ns.size(); ++x) kernel[x] += weight_offset * chars(n - 1, x);
      }
      conv.observe(sup_distance(by_coeffs, convolve(f, kernel)) / scale);
      constant.observe(sup_distance(cesaro_mean(one, n, a), one));
    }
  }
  const std::string scope = fmt::format("n <= {}, divided by n", top);
  partial.set_detail(scope);
  conv.set_detail(weight_offset == 0.0
                      ? scope
                      : fmt::format("{}; kernel weight offset {}", scope, weight_offset));
  out.push_back(partial.finish());
  out.push_back(conv.finish());
  out.push_back(constant.finish());

  Tracker fejer("routes/fejer", 1e-10);
  for (Index n = 1; n <= std::min<Index>(top, 64); ++n) {
    fejer.observe(sup_distance(fejer_mean(f, n), convolve(f, fejer_kernel(ns, n))));
  }
  out.push_back(fejer.finish());
}

void transform_suite(const NumberSystem& ns, std::uint64_t seed,
                     std::vector<SuiteResult>& out) {
  const Index M = ns.size();
  const std::size_t count = M <= 256 ? 50 : (M <= 1024 ? 8 : 2);
  Tracker oracle("transform/oracle", 1e-10);
  Tracker parseval("transform/parseval", 1e-9);
  Tracker round_trip("transform/round_trip", 1e-10);
  Tracker axes("transform/axis_order", 1e-10);
  Tracker linear("transform/linearity", 1e-10);
  std::vector<std::size_t> reversed(ns.resolution());
  for (std::size_t j = 0; j < reversed.size(); ++j) reversed[j] = reversed.size() - 1 - j;

  for (std::size_t i = 0; i < count; ++i) {
    const StepFunction f = random_cells(ns, seed + 17 * i, true);
    const CoefficientVector fast = forward(f);
    const CoefficientVector naive = forward(f, TransformStrategy::naive);
    const CoefficientVector permuted = forward(f, reversed);
    double d = 0.0, p = 0.0;
    for (Index k = 0; k < M; ++k) {
      d = std::max(d, std::abs(fast[k] - naive[k]));
      p = std::max(p, std::abs(fast[k] - permuted[k]));
    }
    oracle.observe(d);
    axes.observe(p);
    double mean_square = 0.0;
    for (const Complex& v : f.cells()) mean_square += std::norm(v);
    parseval.observe(std::abs(fast.energy() - mean_square / static_cast<double>(M)));
    round_trip.observe(sup_distance(inverse(fast), f));

    const StepFunction g = random_cells(ns, seed + 17 * i + 1, true);
    const Complex a(0.7, -1.3), b(-2.1, 0.4);
    const CoefficientVector lhs = forward(a * f + b * g);
    const CoefficientVector G = forward(g);
    for (Index k = 0; k < M; ++k) linear.observe(std::abs(lhs[k] - (a * fast[k] + b * G[k])));
  }
  oracle.set_detail(fmt::format("{} random functions", count));
  for (auto* t : {&oracle, &parseval, &round_trip, &axes, &linear}) out.push_back(t->finish());

  const StepFunction f = random_cells(ns, seed + 5, true);
  Tracker projection("transform/projection", 1e-10);
  Tracker expectation("transform/conditional_expectation", 1e-10);
  for (std::size_t k = 0; k <= ns.resolution(); ++k) {
    const StepFunction s = partial_sum(f, ns.block(k));
    projection.observe(sup_distance(partial_sum(s, ns.block(k)), s));
    const Index Mk = ns.block(k);
    std::vector<Complex> avg(Mk, 0.0);
    for (Index x = 0; x < M; ++x) avg[x % Mk] += f[x];
    for (Complex& v : avg) v /= static_cast<double>(M / Mk);
    for (Index x = 0; x < M; ++x) expectation.observe(std::abs(s[x] - avg[x % Mk]));
  }
  out.push_back(projection.finish());
  out.push_back(expectation.finish());

  Tracker convolution("transform/convolution", 1e-10);
  const StepFunction g = random_cells(ns, seed + 6, true);
  if (M <= 4096) {
    convolution.observe(sup_distance(convolve(f, g, ConvolutionMethod::direct),
                                     convolve(f, g, ConvolutionMethod::spectral)));
  }
  convolution.observe(sup_distance(convolve(f, g), convolve(g, f)));
  out.push_back(convolution.finish());

  Tracker serial("transform/serialization", 0.0);
  const auto text = to_json(f).dump();
  const StepFunction back = step_function_from_json(nlohmann::json::parse(text));
  const CoefficientVector F = forward(f);
  const CoefficientVector Fback =
      coefficients_from_json(nlohmann::json::parse(to_json(F).dump()));
  for (Index x = 0; x < M; ++x) {
    const bool same =
        std::bit_cast<std::uint64_t>(back[x].real()) == std::bit_cast<std::uint64_t>(f[x].real()) &&
        std::bit_cast<std::uint64_t>(back[x].imag()) == std::bit_cast<std::uint64_t>(f[x].imag()) &&
        std::bit_cast<std::uint64_t>(Fback[x].real()) == std::bit_cast<std::uint64_t>(F[x].real()) &&
        std::bit_cast<std::uint64_t>(Fback[x].imag()) == std::bit_cast<std::uint64_t>(F[x].imag());
    serial.observe(same ? 0.0 : 1.0);
  }
  serial.set_detail("bit-exact JSON round trip of cells and coefficients");
  out.push_back(serial.finish());
}

}  // namespace

RunReport run_verify(const ExperimentConfig& cfg) {
  const NumberSystem ns = make_number_system(cfg.radix, cfg.max_cells);
  detail::prepare_output(cfg.out);
  RunReport report{"verify"};
  auto& out = report.suites;
  if (cfg.suite_selected("group")) group_suite(ns, cfg.seed, out);
  if (cfg.suite_selected("characters")) characters_suite(ns, cfg.seed, out);
  if (cfg.suite_selected("binomials")) binomials_suite(cfg.alphas, out);
  if (cfg.suite_selected("dirichlet")) dirichlet_suite(ns, cfg.alphas, out);
  if (cfg.suite_selected("lemma1")) lemma1_suite(ns, cfg.alphas, out);
  if (cfg.suite_selected("routes")) {
    routes_suite(ns, cfg.alphas, cfg.seed, cfg.kernel_weight_offset, out);
  }
  if (cfg.suite_selected("transform")) transform_suite(ns, cfg.seed, out);
  report.data["radix"] = ns.radix().label();
  report.data["cells"] = ns.size();
  detail::write_report(report, cfg, cfg.out / "verify.json");
  return report;
}

}  // namespace vilenkin::cli
