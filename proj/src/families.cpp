#include "vilenkin/families.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

#include "vilenkin/error.hpp"

namespace vilenkin {

StepFunction lacunary(const NumberSystem& ns, std::span<const double> coeffs) {
  if (coeffs.size() > ns.resolution()) {
    throw ValidationError(fmt::format("{} lacunary coefficients for resolution {}",
                                      coeffs.size(), ns.resolution()));
  }
  const CharacterSystem chars(ns);
  return StepFunction::from_cells(ns, [&](Index x) {
    double value = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      value += coeffs[k] * chars.rademacher(k, x).real();
    }
    return Complex(value);
  });
}

std::vector<double> inverse_scale_coefficients(const NumberSystem& ns, double s) {
  std::vector<double> c(ns.resolution());
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = std::pow(static_cast<double>(ns.block(k)), -s);
  }
  return c;
}

StepFunction digit_indicator(const NumberSystem& ns, std::size_t j, Index beta) {
  const Index residue = coset_cell(ns, beta, j);
  const Index block = ns.block(j);
  return StepFunction::from_cells(ns, [=](Index x) {
    return x % block == residue ? Complex(1.0) : Complex{};
  });
}

StepFunction random_lipschitz(const NumberSystem& ns, std::uint64_t seed,
                              double bound) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-bound, bound);
  std::vector<double> u(ns.resolution());
  for (double& v : u) v = uniform(rng);
  return StepFunction::from_cells(ns, [&](Index x) {
    double value = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      value += u[k] * ns.digit(x, k) /
               (static_cast<double>(ns.base(k)) * static_cast<double>(ns.block(k)));
    }
    return Complex(value);
  });
}

StepFunction character_function(const NumberSystem& ns, Index n) {
  const CharacterSystem chars(ns);
  return StepFunction(ns, chars.row(n));
}

StepFunction random_cells(const NumberSystem& ns, std::uint64_t seed,
                          bool complex_values) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  return StepFunction::from_cells(ns, [&](Index) {
    const double re = uniform(rng);
    return complex_values ? Complex(re, uniform(rng)) : Complex(re);
  });
}

}  // namespace vilenkin
