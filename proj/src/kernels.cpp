#include "vilenkin/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "vilenkin/binomials.hpp"
#include "vilenkin/error.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

namespace {

// Digit j of n for 0 <= n <= M_N, including the digit n_N in {0, 1} that
// sits above the resolution when n = M_N.
Index extended_digit(const NumberSystem& ns, Index n, std::size_t j) {
  if (j < ns.resolution()) return ns.digit(n, j);
  return n / ns.size();
}

void require_order(const NumberSystem& ns, Index n) {
  if (n > ns.size()) {
    throw ValidationError(
        fmt::format("kernel order {} exceeds M_N = {}", n, ns.size()));
  }
}

StepFunction dirichlet_naive(const NumberSystem& ns, Index n) {
  const CharacterSystem chars(ns);
  StepFunction out(ns);
  for (Index k = 0; k < n; ++k) {
    for (Index x = 0; x < ns.size(); ++x) out[x] += chars(k, x);
  }
  return out;
}

StepFunction dirichlet_closed(const NumberSystem& ns, Index n) {
  const auto ladder = ns.ladder();
  const auto it = std::find(ladder.begin(), ladder.end(), n);
  if (it == ladder.end()) {
    throw UsageError(
        fmt::format("closed-form Dirichlet kernel needs n = M_k, got {}", n));
  }
  const Index block = *it;
  return StepFunction::from_cells(ns, [block](Index x) {
    return x % block == 0 ? Complex(static_cast<double>(block)) : Complex{};
  });
}

StepFunction dirichlet_product_form(const NumberSystem& ns, Index n) {
  if (n == 0) return StepFunction(ns);
  const std::size_t A = ns.leading_position(n);
  // D_n depends on x_0..x_A only.
  const NumberSystem coarse = ns.truncated(std::min(A + 1, ns.resolution()));
  const CharacterSystem chars(coarse);
  const Complex psi_n_is_one{1.0, 0.0};

  StepFunction out(coarse);
  for (Index x = 0; x < coarse.size(); ++x) {
    const std::size_t s = coarse.first_nonzero(x);
    const Complex psi = n < coarse.size() ? chars(n, x) : psi_n_is_one;
    Complex sum{};
    for (std::size_t j = 0; j <= std::min(s, A); ++j) {
      const Index nj = extended_digit(ns, n, j);
      if (nj == 0) continue;
      // x lies in I_j for every j <= s, where D_{M_j}(x) = M_j.
      Complex geometric{};
      if (j < coarse.resolution()) {
        const unsigned m = coarse.base(j);
        for (Index a = m - nj; a < m; ++a) {
          geometric += chars.rademacher_power(j, a, x);
        }
      } else {
        geometric = static_cast<double>(nj);
      }
      sum += static_cast<double>(ns.block(j)) * geometric;
    }
    out[x] = psi * sum;
  }
  return out.lift(ns);
}

}  // namespace

StepFunction dirichlet(const NumberSystem& ns, Index n,
                       KernelStrategy strategy) {
  require_order(ns, n);
  switch (strategy) {
    case KernelStrategy::naive:
      return dirichlet_naive(ns, n);
    case KernelStrategy::closed:
      return dirichlet_closed(ns, n);
    case KernelStrategy::recursive:
      return dirichlet_product_form(ns, n);
  }
  throw UsageError("unknown kernel strategy");
}

std::vector<StepFunction> dirichlet_sequence(const NumberSystem& ns,
                                             Index max_n) {
  require_order(ns, max_n);
  const CharacterSystem chars(ns);
  std::vector<StepFunction> table;
  table.reserve(max_n + 1);
  table.emplace_back(ns);
  for (Index k = 0; k < max_n; ++k) {
    StepFunction next = table.back();
    for (Index x = 0; x < ns.size(); ++x) next[x] += chars(k, x);
    table.push_back(std::move(next));
  }
  return table;
}

StepFunction kernel_from_weights(const NumberSystem& ns,
                                 std::span<const double> weights) {
  if (weights.size() > ns.size()) {
    throw ValidationError(fmt::format("{} weights exceed M_N = {}",
                                      weights.size(), ns.size()));
  }
  std::size_t r = 1;
  while (ns.block(r) < weights.size()) ++r;
  const NumberSystem coarse = ns.truncated(r);
  CoefficientVector c(coarse);
  for (std::size_t v = 0; v < weights.size(); ++v) c[v] = weights[v];
  return inverse(c).lift(ns);
}

StepFunction fejer_kernel(const NumberSystem& ns, Index n) {
  if (n == 0) throw UsageError("Fejer kernel K_0 is undefined");
  require_order(ns, n);
  std::vector<double> weights(n);
  const double dn = static_cast<double>(n);
  for (Index v = 0; v < n; ++v) weights[v] = (dn - static_cast<double>(v)) / dn;
  return kernel_from_weights(ns, weights);
}

StepFunction cesaro_kernel(const NumberSystem& ns, Index n, double alpha) {
  require_negative_order(alpha);
  if (n == 0) throw UsageError("Cesaro kernel needs n >= 1");
  require_order(ns, n);
  const CesaroTable a(-alpha, n);
  const double norm = a.values()[n - 1];
  std::vector<double> weights(n);
  for (Index v = 0; v < n; ++v) weights[v] = a.values()[n - 1 - v] / norm;
  return kernel_from_weights(ns, weights);
}

double RecursionReport::max_residual() const {
  return std::max({split, shift, geometric, reflection, product_form,
                   closed_form});
}

RecursionReport verify_dirichlet_recursions(const NumberSystem& ns,
                                            Index max_n) {
  const auto D = dirichlet_sequence(ns, max_n);
  const CharacterSystem chars(ns);
  const Index cells = ns.size();
  RecursionReport report;

  auto track = [](double& slot, Complex lhs, Complex rhs) {
    slot = std::max(slot, std::abs(lhs - rhs));
  };

  for (Index n = 1; n <= max_n; ++n) {
    const std::size_t k = ns.leading_position(n);
    const Index nk = extended_digit(ns, n, k);
    const Index rest = n - nk * ns.block(k);
    for (Index x = 0; x < cells; ++x) {
      const Complex psi = chars.rademacher_power(k, 1, x);
      const Complex psi_nk = chars.rademacher_power(k, nk, x);
      // psi_{M_k}(x) = 1 exactly when x_k = 0; the quotient is then the
      // geometric sum 1 + psi + ... + psi^{n_k - 1} = n_k.
      const Complex ratio = psi == Complex(1.0, 0.0)
                                ? Complex(static_cast<double>(nk))
                                : (1.0 - psi_nk) / (1.0 - psi);
      track(report.split, D[n][x], ratio * D[ns.block(k)][x] + psi_nk * D[rest][x]);
    }
    ++report.tuples;
  }

  for (std::size_t k = 0; k < ns.resolution(); ++k) {
    const Index Mk = ns.block(k);
    if (Mk > max_n) break;
    for (Index nk = 1; nk < ns.base(k); ++nk) {
      const Index head = nk * Mk;
      for (Index j = 0; j < Mk && j + head <= max_n; ++j) {
        for (Index x = 0; x < cells; ++x) {
          track(report.shift, D[j + head][x],
                D[head][x] + chars.rademacher_power(k, nk, x) * D[j][x]);
        }
        ++report.tuples;
      }
    }
    for (Index r = 0; r < ns.base(k); ++r) {
      for (Index j = 0; j < Mk && j + r * Mk <= max_n; ++j) {
        for (Index x = 0; x < cells; ++x) {
          Complex geometric{};
          for (Index q = 0; q < r; ++q) geometric += chars.rademacher_power(k, q, x);
          track(report.geometric, D[j + r * Mk][x],
                geometric * D[Mk][x] + chars.rademacher_power(k, r, x) * D[j][x]);
        }
        ++report.tuples;
      }
    }
  }

  for (std::size_t s = 0; s <= ns.resolution(); ++s) {
    const Index Ms = ns.block(s);
    const Index top = s < ns.resolution() ? ns.base(s) - 1 : 1;
    for (Index digit = 1; digit <= top && digit * Ms <= max_n; ++digit) {
      const Index head = digit * Ms;
      for (Index j = 0; j < head; ++j) {
        for (Index x = 0; x < cells; ++x) {
          const Complex tail = chars(head - 1, x) * std::conj(D[j][x]);
          track(report.reflection, D[head - j][x], D[head][x] - tail);
          track(report.reflection_plus_sign, D[head - j][x], D[head][x] + tail);
        }
        ++report.tuples;
      }
    }
  }

  for (Index n = 0; n <= max_n; ++n) {
    const StepFunction product = dirichlet(ns, n, KernelStrategy::recursive);
    report.product_form = std::max(report.product_form, sup_distance(product, D[n]));
    ++report.tuples;
  }
  for (std::size_t k = 0; k <= ns.resolution() && ns.block(k) <= max_n; ++k) {
    const StepFunction closed = dirichlet(ns, ns.block(k), KernelStrategy::closed);
    report.closed_form =
        std::max(report.closed_form, sup_distance(closed, D[ns.block(k)]));
    ++report.tuples;
  }
  return report;
}

double lemma1_residual(const NumberSystem& ns, Index n, double alpha,
                       Lemma1Reading reading) {
  const auto table = dirichlet_sequence(ns, n);
  return lemma1_residual(table, n, alpha, reading);
}

double lemma1_residual(std::span<const StepFunction> D, Index n, double alpha,
                       Lemma1Reading reading) {
  require_negative_order(alpha);
  if (n == 0 || n >= D.size()) {
    throw ValidationError(fmt::format(
        "Lemma 1 decomposition needs 1 <= n < table size {}", D.size()));
  }
  const NumberSystem& ns = D[0].ns();
  require_order(ns, n);
  const CharacterSystem chars(ns);
  const CesaroTable upper(-alpha, n);
  const CesaroTable lower(-alpha - 1.0, n);
  const auto at = [](const CesaroTable& t, Index i) {
    return t[static_cast<std::int64_t>(i)];
  };
  const auto at_shifted = [](const CesaroTable& t, Index i) {
    return t[static_cast<std::int64_t>(i) - 1];
  };

  StepFunction lhs(ns);
  for (Index j = 1; j <= n; ++j) lhs += at(lower, n - j) * D[j];

  const std::size_t A = ns.leading_position(n);
  const std::size_t first = reading == Lemma1Reading::from_zero ? 0 : 1;
  StepFunction rhs(ns);
  for (std::size_t k = 0; k <= A; ++k) {
    const Index nk = extended_digit(ns, n, k);
    if (nk == 0) continue;
    const Index head = nk * ns.block(k);
    const Index trunc_k = ns.truncation(n, static_cast<int>(k));
    const Index trunc_below = ns.truncation(n, static_cast<int>(k) - 1);
    for (Index x = 0; x < ns.size(); ++x) {
      Complex P{1.0, 0.0};
      for (std::size_t l = k + 1; l <= A; ++l) {
        P *= chars.rademacher_power(l, extended_digit(ns, n, l), x);
      }
      Complex value{};
      if (k >= first) value += D[head][x] * at_shifted(upper, trunc_k);
      Complex tail{};
      for (Index j = 0; j < head; ++j) {
        tail += at(lower, trunc_below + j) * std::conj(D[j][x]);
      }
      value -= chars(head - 1, x) * tail;
      rhs[x] += P * value;
    }
  }
  return sup_distance(lhs, rhs);
}

}  // namespace vilenkin
