#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vilenkin/group.hpp"

namespace vilenkin {

/// A_n^alpha = (alpha+1)...(alpha+n)/n!, evaluated by the multiplicative
/// recurrence A_n = A_{n-1} (alpha+n)/n from A_0 = 1.
/// Throws DomainError for alpha in {-1, -2, ...}.
double cesaro_coefficient(Index n, double alpha);

/// Tabulated A_0^alpha .. A_max^alpha for one alpha.
///
/// Index -1 reads as 0, matching the empty sum sum_{k=0}^{-1} A_k^{alpha-1}.
class CesaroTable {
 public:
  CesaroTable(double alpha, Index max_n);

  /// Same recurrence without the domain check. For a negative integer alpha
  /// the product formula is still finite (the factor alpha + |alpha| = 0
  /// zeroes every later entry); identity checks at alpha = 0 need A^{-1}.
  static CesaroTable product_formula(double alpha, Index max_n);

  double alpha() const { return alpha_; }
  Index max_n() const { return values_.size() - 1; }
  std::span<const double> values() const { return values_; }

  double operator[](std::int64_t n) const;

 private:
  struct Unchecked {};
  CesaroTable(double alpha, Index max_n, Unchecked);

  double alpha_;
  std::vector<double> values_;
};

/// Residuals of the identities between consecutive orders.
struct AIdentityReport {
  /// max_n |(A_n^a - A_{n-1}^a) - A_n^{a-1}| / max(|lhs|, |rhs|).
  double difference_relative = 0.0;
  double difference_absolute = 0.0;
  /// sum_{k=0}^{n} A_k^{a-1} = A_n^a.
  double summation_relative = 0.0;
  double summation_absolute = 0.0;
  /// Absolute residual of sum_{k=0}^{n-1} A_{n-k}^{a-1} = A_n^a, which omits
  /// the k = n term A_0^{a-1} = 1 and is therefore off by exactly 1.
  double shifted_summation_absolute = 0.0;
};

AIdentityReport verify_a_identities(Index max_n, double alpha);

/// A_n^alpha / A_{2n}^alpha, which tends to 2^{-alpha} because
/// A_n^alpha ~ n^alpha / Gamma(alpha + 1).
double verify_a_asymptotic(double alpha, Index n);

}  // namespace vilenkin
