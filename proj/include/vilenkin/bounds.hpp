#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vilenkin/step_function.hpp"

namespace vilenkin {

// The bound lemmas carry unspecified constants c(alpha) and c. Each scan
// reports the observed ratio of the left side to the bound without its
// constant; the empirical constant is the sup over the scan.

struct BoundScanRecord {
  Index n = 0;
  double alpha = 0.0;
  double sup_ratio = 0.0;
  Index argmax_cell = 0;
  /// Scale k for per-scale scans, 0 otherwise.
  std::size_t scale = 0;
  /// Ratio at Z_beta^{(k)} for beta = 1..M_k-1 (Lemma 3 only).
  std::vector<double> beta_ratios;
};

/// For each n in [n_first, n_last]:
///   sup_x |K_n^{-a}(x)| A_{n-1}^{-a} / sum_{l=0}^{A} M_l^{-a} D_{M_l}(x),
/// M_A <= n < M_{A+1}. The majorant is >= 1 everywhere (l = 0 term).
std::vector<BoundScanRecord> lemma2_ratio_scan(const NumberSystem& ns,
                                               double alpha, Index n_first,
                                               Index n_last);

/// For each n in [n_first, n_last]: |K_n^{-a}(Z_beta^{(k)})| beta^{1-a} / M_k
/// over beta = 1..M_k-1.
std::vector<BoundScanRecord> lemma3_ratio_scan(const NumberSystem& ns,
                                               double alpha, std::size_t k,
                                               Index n_first, Index n_last);

/// [(1/n) integral |sum_{k=1}^{n} a_k D_k|] sqrt(n) / ||a||_2.
double agaev_ratio(const NumberSystem& ns, std::span<const double> a);

/// Largest agaev_ratio over `draws` random sign vectors of length n.
double agaev_monte_carlo(const NumberSystem& ns, Index n, std::size_t draws,
                         std::uint64_t seed);

struct TsitsiResult {
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs; 0 when both vanish, +inf when only rhs vanishes.
  double ratio = 0.0;
  /// rhs is zero while lhs is not.
  bool anomaly = false;
  Index argmax_cell = 0;
  /// sum_{r<k} (M_r/M_k) omega(f, 1/M_r): each level with its own modulus.
  double rhs_per_level = 0.0;
  double ratio_per_level = 0.0;
};

/// Compares
///   (1/|A_n^{-a}|) || integral sum_{v<M_{k-1}} A_{n-v}^{-a} psi_v(u)
///                     [f(. + u) - f(.)] dmu(u) ||_C
/// with sum_{r<k} (M_r/M_k) omega(f, 1/M_k), for M_k <= n < M_{k+1}.
TsitsiResult tsitsi_ratio(const StepFunction& f, Index n, std::size_t k,
                          double alpha);

/// tsitsi_ratio for every n in [M_k, M_{k+1}), one record per n.
std::vector<BoundScanRecord> lemma5_ratio_scan(const StepFunction& f,
                                               double alpha, std::size_t k);

/// Stand-in check for an unspecified constant: compares the largest value
/// over the first half of an ordered scan with the largest over the rest.
struct HalfRangeStability {
  double lower_max = 0.0;
  double upper_max = 0.0;
  bool finite = true;

  double ratio() const;
  bool stable(double factor) const { return finite && ratio() <= factor; }
};

HalfRangeStability half_range_stability(std::span<const double> ordered);

}  // namespace vilenkin
