#include "vilenkin/binomials.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "vilenkin/error.hpp"

namespace vilenkin {

namespace {

bool is_negative_integer(double alpha) {
  return alpha < 0.0 && alpha == std::floor(alpha);
}

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || is_negative_integer(alpha)) {
    throw DomainError(
        fmt::format("A_n^alpha undefined for alpha = {}", alpha));
  }
}

double relative(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

}  // namespace

double cesaro_coefficient(Index n, double alpha) {
  check_alpha(alpha);
  double value = 1.0;
  for (Index k = 1; k <= n; ++k) {
    value *= (alpha + static_cast<double>(k)) / static_cast<double>(k);
  }
  return value;
}

CesaroTable::CesaroTable(double alpha, Index max_n)
    : CesaroTable((check_alpha(alpha), alpha), max_n, Unchecked{}) {}

CesaroTable::CesaroTable(double alpha, Index max_n, Unchecked)
    : alpha_(alpha), values_(max_n + 1) {
  values_[0] = 1.0;
  for (Index k = 1; k <= max_n; ++k) {
    values_[k] =
        values_[k - 1] * (alpha + static_cast<double>(k)) / static_cast<double>(k);
  }
}

CesaroTable CesaroTable::product_formula(double alpha, Index max_n) {
  if (!std::isfinite(alpha)) {
    throw DomainError("alpha must be finite");
  }
  return CesaroTable(alpha, max_n, Unchecked{});
}

double CesaroTable::operator[](std::int64_t n) const {
  if (n == -1) return 0.0;
  if (n < -1 || static_cast<Index>(n) >= values_.size()) {
    throw ValidationError(fmt::format(
        "A_{}^{} outside the table range [-1, {}]", n, alpha_, max_n()));
  }
  return values_[static_cast<std::size_t>(n)];
}

AIdentityReport verify_a_identities(Index max_n, double alpha) {
  const auto upper = CesaroTable::product_formula(alpha, max_n);
  const auto lower = CesaroTable::product_formula(alpha - 1.0, max_n);
  AIdentityReport report;

  for (Index n = 1; n <= max_n; ++n) {
    const double lhs = upper.values()[n] - upper.values()[n - 1];
    const double rhs = lower.values()[n];
    report.difference_absolute =
        std::max(report.difference_absolute, std::abs(lhs - rhs));
    report.difference_relative =
        std::max(report.difference_relative, relative(lhs, rhs));
  }

  // Neumaier-compensated running sum of A_k^{alpha-1}.
  double sum = lower.values()[0];
  double carry = 0.0;
  for (Index n = 1; n <= max_n; ++n) {
    const double term = lower.values()[n];
    const double t = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term
                                             : (term - t) + sum;
    sum = t;
    const double total = sum + carry;
    const double target = upper.values()[n];
    report.summation_absolute =
        std::max(report.summation_absolute, std::abs(total - target));
    report.summation_relative =
        std::max(report.summation_relative, relative(total, target));
    const double shifted = total - lower.values()[0];
    report.shifted_summation_absolute =
        std::max(report.shifted_summation_absolute, std::abs(shifted - target));
  }
  return report;
}

double verify_a_asymptotic(double alpha, Index n) {
  if (n < 2) {
    throw ValidationError("asymptotic ratio needs n >= 2");
  }
  const CesaroTable table(alpha, 2 * n);
  return table.values()[n] / table.values()[2 * n];
}

}  // namespace vilenkin
