#include "vilenkin/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <fmt/format.h>

#include "vilenkin/binomials.hpp"
#include "vilenkin/error.hpp"
#include "vilenkin/kernels.hpp"

namespace vilenkin {

namespace {

enum class Direction { analysis, synthesis };

// In-place tensor-product DFT. Along axis j the cell index splits as
// low + M_j d + M_{j+1} high with d the j-th digit.
void apply_axes(std::vector<Complex>& data, const CharacterSystem& chars,
                std::span<const std::size_t> order, Direction direction) {
  const NumberSystem& ns = chars.ns();
  std::vector<Complex> line;
  std::vector<Complex> out;
  for (std::size_t j : order) {
    const unsigned m = ns.base(j);
    const Index stride = ns.block(j);
    const Index span = ns.block(j + 1);
    line.resize(m);
    out.resize(m);
    for (Index high = 0; high < ns.size(); high += span) {
      for (Index low = 0; low < stride; ++low) {
        const Index base = high + low;
        for (unsigned d = 0; d < m; ++d) line[d] = data[base + d * stride];
        for (unsigned k = 0; k < m; ++k) {
          Complex acc = line[0];
          for (unsigned d = 1; d < m; ++d) {
            const Complex w = chars.root(j, Index{k} * d);
            acc += line[d] * (direction == Direction::analysis ? std::conj(w) : w);
          }
          out[k] = acc;
        }
        for (unsigned k = 0; k < m; ++k) data[base + k * stride] = out[k];
      }
    }
  }
}

std::vector<std::size_t> natural_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

CoefficientVector fast_forward(const StepFunction& f,
                               std::span<const std::size_t> order) {
  const CharacterSystem chars(f.ns());
  std::vector<Complex> data(f.cells().begin(), f.cells().end());
  apply_axes(data, chars, order, Direction::analysis);
  const double scale = 1.0 / static_cast<double>(f.size());
  for (Complex& v : data) v *= scale;
  return CoefficientVector(f.ns(), std::move(data));
}

CoefficientVector naive_forward(const StepFunction& f) {
  const CharacterSystem chars(f.ns());
  const Index size = f.size();
  std::vector<Complex> coeffs(size);
  for (Index k = 0; k < size; ++k) {
    Complex acc{};
    for (Index x = 0; x < size; ++x) acc += f[x] * std::conj(chars(k, x));
    coeffs[k] = acc / static_cast<double>(size);
  }
  return CoefficientVector(f.ns(), std::move(coeffs));
}

StepFunction synthesize_weighted(const StepFunction& f, Index n,
                                 const auto& weight) {
  CoefficientVector c = forward(f);
  for (Index v = 0; v < c.size(); ++v) c[v] = v < n ? c[v] * weight(v) : Complex{};
  return inverse(c);
}

void require_frequency_bound(const StepFunction& f, Index n) {
  if (n > f.size()) {
    throw ValidationError(
        fmt::format("n = {} exceeds M_N = {}", n, f.size()));
  }
}

}  // namespace

void require_negative_order(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError(
        fmt::format("alpha = {} outside the open interval (0, 1)", alpha));
  }
}

CoefficientVector forward(const StepFunction& f, TransformStrategy strategy) {
  if (strategy == TransformStrategy::naive) return naive_forward(f);
  const auto order = natural_order(f.resolution());
  return fast_forward(f, order);
}

CoefficientVector forward(const StepFunction& f,
                          std::span<const std::size_t> axis_order) {
  std::vector<std::size_t> sorted(axis_order.begin(), axis_order.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted != natural_order(f.resolution())) {
    throw ValidationError("axis order must be a permutation of 0..N-1");
  }
  return fast_forward(f, axis_order);
}

StepFunction inverse(const CoefficientVector& c, TransformStrategy strategy) {
  const CharacterSystem chars(c.ns());
  if (strategy == TransformStrategy::naive) {
    std::vector<Complex> cells(c.size());
    for (Index x = 0; x < c.size(); ++x) {
      Complex acc{};
      for (Index k = 0; k < c.size(); ++k) {
        if (c[k] != Complex{}) acc += c[k] * chars(k, x);
      }
      cells[x] = acc;
    }
    return StepFunction(c.ns(), std::move(cells));
  }
  std::vector<Complex> data(c.coeffs().begin(), c.coeffs().end());
  const auto order = natural_order(c.ns().resolution());
  apply_axes(data, chars, order, Direction::synthesis);
  return StepFunction(c.ns(), std::move(data));
}

StepFunction partial_sum(const StepFunction& f, Index n) {
  require_frequency_bound(f, n);
  return synthesize_weighted(f, n, [](Index) { return 1.0; });
}

StepFunction fejer_mean(const StepFunction& f, Index n) {
  if (n == 0) throw UsageError("Fejer mean sigma_0 is undefined");
  require_frequency_bound(f, n);
  const double dn = static_cast<double>(n);
  return synthesize_weighted(
      f, n, [dn](Index v) { return (dn - static_cast<double>(v)) / dn; });
}

StepFunction cesaro_mean(const StepFunction& f, Index n, double alpha,
                         CesaroRoute route) {
  require_negative_order(alpha);
  if (n == 0) throw UsageError("Cesaro mean needs n >= 1");
  require_frequency_bound(f, n);

  switch (route) {
    case CesaroRoute::coefficients: {
      const CesaroTable a(-alpha, n);
      const double norm = a[static_cast<std::int64_t>(n) - 1];
      return synthesize_weighted(f, n, [&](Index v) {
        return a[static_cast<std::int64_t>(n - 1 - v)] / norm;
      });
    }
    case CesaroRoute::partial_sums: {
      const CesaroTable a(-alpha, n);
      const CesaroTable b(-alpha - 1.0, n);
      const CoefficientVector c = forward(f);
      const CharacterSystem chars(f.ns());
      StepFunction running(f.ns());  // S_0 f = 0
      StepFunction acc(f.ns());
      for (Index v = 0; v <= n; ++v) {
        if (v > 0) {
          const Complex coeff = c[v - 1];
          for (Index x = 0; x < f.size(); ++x) running[x] += coeff * chars(v - 1, x);
          acc += b[static_cast<std::int64_t>(n - v)] * running;
        }
      }
      acc *= 1.0 / a[static_cast<std::int64_t>(n) - 1];
      return acc;
    }
    case CesaroRoute::convolution:
      return convolve(f, cesaro_kernel(f.ns(), n, alpha));
  }
  throw UsageError("unknown Cesaro route");
}

StepFunction convolve(const StepFunction& f, const StepFunction& g,
                      ConvolutionMethod method) {
  if (!f.same_domain(g)) {
    throw ValidationError("convolution operands live on different groups");
  }
  const NumberSystem& ns = f.ns();
  if (method == ConvolutionMethod::direct) {
    std::vector<Complex> cells(ns.size());
    for (Index x = 0; x < ns.size(); ++x) {
      Complex acc{};
      for (Index t = 0; t < ns.size(); ++t) acc += f[ns.sub(x, t)] * g[t];
      cells[x] = acc / static_cast<double>(ns.size());
    }
    return StepFunction(ns, std::move(cells));
  }
  CoefficientVector cf = forward(f);
  const CoefficientVector cg = forward(g);
  for (Index k = 0; k < cf.size(); ++k) cf[k] *= cg[k];
  return inverse(cf);
}

double sup_distance(const StepFunction& f, const StepFunction& g) {
  if (!f.same_domain(g)) {
    throw ValidationError("sup distance between functions on different groups");
  }
  double best = 0.0;
  for (Index x = 0; x < f.size(); ++x) best = std::max(best, std::abs(f[x] - g[x]));
  return best;
}

}  // namespace vilenkin
