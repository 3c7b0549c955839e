#include "vilenkin/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "vilenkin/binomials.hpp"
#include "vilenkin/error.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/oscillation.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

namespace {

void require_range(const NumberSystem& ns, Index first, Index last) {
  if (first == 0 || first > last || last > ns.size()) {
    throw ValidationError(fmt::format(
        "scan range [{}, {}] must lie in [1, M_N = {}]", first, last, ns.size()));
  }
}

}  // namespace

std::vector<BoundScanRecord> lemma2_ratio_scan(const NumberSystem& ns,
                                               double alpha, Index n_first,
                                               Index n_last) {
  require_negative_order(alpha);
  require_range(ns, n_first, n_last);
  const CesaroTable a(-alpha, n_last);

  // M_l^{-a} D_{M_l}(x) = M_l^{1-a} for l up to the first nonzero digit of x.
  std::vector<double> weight(ns.resolution() + 1);
  for (std::size_t l = 0; l <= ns.resolution(); ++l) {
    weight[l] = std::pow(static_cast<double>(ns.block(l)), 1.0 - alpha);
  }
  std::vector<std::size_t> depth(ns.size());
  for (Index x = 0; x < ns.size(); ++x) depth[x] = ns.first_nonzero(x);

  std::vector<BoundScanRecord> out;
  for (Index n = n_first; n <= n_last; ++n) {
    const StepFunction K = cesaro_kernel(ns, n, alpha);
    const std::size_t A = ns.leading_position(n);
    const double scale = a.values()[n - 1];
    BoundScanRecord record;
    record.n = n;
    record.alpha = alpha;
    for (Index x = 0; x < ns.size(); ++x) {
      double majorant = 0.0;
      for (std::size_t l = 0; l <= std::min(A, depth[x]); ++l) majorant += weight[l];
      const double ratio = std::abs(K[x]) * scale / majorant;
      if (ratio > record.sup_ratio) {
        record.sup_ratio = ratio;
        record.argmax_cell = x;
      }
    }
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<BoundScanRecord> lemma3_ratio_scan(const NumberSystem& ns,
                                               double alpha, std::size_t k,
                                               Index n_first, Index n_last) {
  require_negative_order(alpha);
  require_range(ns, n_first, n_last);
  if (k == 0 || k > ns.resolution()) {
    throw ValidationError(fmt::format("scale k = {} outside [1, {}]", k,
                                      ns.resolution()));
  }
  const Index Mk = ns.block(k);
  std::vector<Index> reps(Mk);
  for (Index beta = 1; beta < Mk; ++beta) reps[beta] = coset_cell(ns, beta, k);

  std::vector<BoundScanRecord> out;
  for (Index n = n_first; n <= n_last; ++n) {
    const StepFunction K = cesaro_kernel(ns, n, alpha);
    BoundScanRecord record;
    record.n = n;
    record.alpha = alpha;
    record.scale = k;
    record.beta_ratios.resize(Mk - 1);
    for (Index beta = 1; beta < Mk; ++beta) {
      const double ratio = std::abs(K[reps[beta]]) *
                           std::pow(static_cast<double>(beta), 1.0 - alpha) /
                           static_cast<double>(Mk);
      record.beta_ratios[beta - 1] = ratio;
      if (ratio > record.sup_ratio) {
        record.sup_ratio = ratio;
        record.argmax_cell = reps[beta];
      }
    }
    out.push_back(std::move(record));
  }
  return out;
}

double agaev_ratio(const NumberSystem& ns, std::span<const double> a) {
  const Index n = a.size();
  if (n == 0 || n > ns.size()) {
    throw ValidationError(
        fmt::format("coefficient count {} outside [1, M_N = {}]", n, ns.size()));
  }
  double energy = 0.0;
  for (double v : a) energy += v * v;
  if (energy == 0.0) throw DomainError("coefficients must not all vanish");

  // sum_{k=1}^{n} a_k D_k = sum_{v<n} (a_{v+1} + ... + a_n) psi_v.
  std::vector<double> tail(n);
  double running = 0.0;
  for (Index v = n; v-- > 0;) {
    running += a[v];
    tail[v] = running;
  }
  const StepFunction S = kernel_from_weights(ns, tail);
  const double dn = static_cast<double>(n);
  return S.mean_abs() / dn * std::sqrt(dn) / std::sqrt(energy);
}

double agaev_monte_carlo(const NumberSystem& ns, Index n, std::size_t draws,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> a(n);
  double best = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    for (double& v : a) v = coin(rng) ? 1.0 : -1.0;
    best = std::max(best, agaev_ratio(ns, a));
  }
  return best;
}

TsitsiResult tsitsi_ratio(const StepFunction& f, Index n, std::size_t k,
                          double alpha) {
  require_negative_order(alpha);
  const NumberSystem& ns = f.ns();
  if (k == 0) throw UsageError("k = 0 leaves an empty low-frequency block");
  if (k >= ns.resolution() || n < ns.block(k) || n >= ns.block(k + 1)) {
    throw ValidationError(fmt::format(
        "need M_k <= n < M_(k+1) <= M_N, got n = {}, k = {}", n, k));
  }
  const CesaroTable a(-alpha, n);
  const Index low = ns.block(k - 1);
  std::vector<double> weights(low);
  for (Index v = 0; v < low; ++v) weights[v] = a.values()[n - v];
  const StepFunction L = kernel_from_weights(ns, weights);

  // integral L(u) f(x + u) dmu(u) = (f * L(-.))(x).
  const StepFunction reflected =
      StepFunction::from_cells(ns, [&](Index t) { return L[ns.neg(t)]; });
  const StepFunction correlation = convolve(f, reflected);
  const double An = a.values()[n];

  TsitsiResult result;
  for (Index x = 0; x < ns.size(); ++x) {
    const double value = std::abs(correlation[x] - f[x] * An);
    if (value > result.lhs) {
      result.lhs = value;
      result.argmax_cell = x;
    }
  }
  result.lhs /= std::abs(An);

  double levels = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    levels += static_cast<double>(ns.block(r)) / static_cast<double>(ns.block(k));
  }
  result.rhs = levels * modulus_of_continuity(f, k);
  for (std::size_t r = 0; r < k; ++r) {
    result.rhs_per_level += static_cast<double>(ns.block(r)) /
                            static_cast<double>(ns.block(k)) *
                            modulus_of_continuity(f, r);
  }

  // Round-off floor for an exactly vanishing left side.
  const double floor = 1e-12 * (1.0 + f.sup_norm());
  const auto quotient = [&](double rhs) {
    if (rhs > 0.0) return result.lhs / rhs;
    if (result.lhs <= floor) return 0.0;
    return std::numeric_limits<double>::infinity();
  };
  result.ratio = quotient(result.rhs);
  result.ratio_per_level = quotient(result.rhs_per_level);
  result.anomaly = std::isinf(result.ratio);
  return result;
}

std::vector<BoundScanRecord> lemma5_ratio_scan(const StepFunction& f,
                                               double alpha, std::size_t k) {
  const NumberSystem& ns = f.ns();
  if (k == 0 || k >= ns.resolution()) {
    throw ValidationError(fmt::format("scale k = {} outside [1, {})", k,
                                      ns.resolution()));
  }
  std::vector<BoundScanRecord> out;
  for (Index n = ns.block(k); n < ns.block(k + 1); ++n) {
    const TsitsiResult r = tsitsi_ratio(f, n, k, alpha);
    BoundScanRecord record;
    record.n = n;
    record.alpha = alpha;
    record.sup_ratio = r.ratio;
    record.argmax_cell = r.argmax_cell;
    record.scale = k;
    out.push_back(std::move(record));
  }
  return out;
}

double HalfRangeStability::ratio() const {
  if (lower_max == 0.0) {
    return upper_max == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return upper_max / lower_max;
}

HalfRangeStability half_range_stability(std::span<const double> ordered) {
  if (ordered.size() < 2) {
    throw ValidationError("stability check needs at least two values");
  }
  HalfRangeStability out;
  const std::size_t half = ordered.size() / 2;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const double v = ordered[i];
    if (!std::isfinite(v) || v < 0.0) out.finite = false;
    double& slot = i < half ? out.lower_max : out.upper_max;
    slot = std::max(slot, v);
  }
  return out;
}

}  // namespace vilenkin
