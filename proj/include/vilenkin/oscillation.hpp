#pragma once

#include <cstddef>
#include <vector>

#include "vilenkin/step_function.hpp"

namespace vilenkin {

/// omega(f, I_k + Z_beta^{(k)}): diameter of the value set of f over the
/// coset, i.e. the largest |f(x) - f(x')| with x, x' in the coset.
double coset_oscillation(const StepFunction& f, std::size_t k, Index beta);

/// omega(f, 1/M_k) = sup_x sup_{t in I_k} |f(x - t) - f(x)|, 0 <= k <= N.
double modulus_of_continuity(const StepFunction& f, std::size_t k);

/// Per-scale oscillation data for k = 0..N.
struct OscillationProfile {
  std::vector<Index> block;       // M_k
  std::vector<double> omega;      // omega(f, 1/M_k)
  std::vector<double> O;          // sum_{beta=1}^{M_k-1} omega(f, I_k + Z_beta)
  std::vector<double> nu;         // sum_{beta=0}^{M_k-1} omega(f, I_k + Z_beta)
  std::vector<double> O_running_sup;

  /// sup_{k <= N} O(f, M_k): finite-scale evidence for bounded oscillation.
  double bo_score() const;
};

OscillationProfile oscillation_profile(const StepFunction& f);

/// Young function M(u) = integral_0^u p(t) dt, used through M and M^{-1}.
class YoungFunction {
 public:
  enum class Kind { power, table };

  /// M(u) = u^p, p >= 1.
  static YoungFunction power(double p);
  /// Piecewise-linear M through (u_i, M_i); needs u_0 = M_0 = 0, strictly
  /// increasing values and nondecreasing slopes. Extended past the last knot
  /// with the last slope.
  static YoungFunction table(std::vector<double> u, std::vector<double> M);

  Kind kind() const { return kind_; }
  double exponent() const { return p_; }
  std::span<const double> knots() const { return u_; }
  std::span<const double> knot_values() const { return M_; }

  double operator()(double u) const;
  /// M^{-1}(v) for v >= 0; closed form for the power kind, monotone
  /// bisection to relative tolerance 1e-10 for the table kind.
  double inverse(double v) const;

 private:
  YoungFunction() = default;

  Kind kind_ = Kind::power;
  double p_ = 1.0;
  std::vector<double> u_;
  std::vector<double> M_;
};

/// sup_k sum_{beta=1}^{M_k-1} M(omega(f, I_k + Z_beta^{(k)})) over k <= N.
double bo_m_score(const StepFunction& f, const YoungFunction& M);

/// sup_x sum_{beta=1}^{M_k-1} beta^{alpha-1}
///   |f(x - Z_beta^{(k)}) - f(x - Z_beta^{(k)} - e_k)| for k < N.
double theorem1_condition(const StepFunction& f, std::size_t k, double alpha);

/// Partial sums of a positive series indexed by k = 1..K.
struct SeriesReport {
  std::vector<double> terms;         // terms[i] is the k = i + 1 term
  std::vector<double> partial_sums;

  double total() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
  /// Every term is at most the previous one.
  bool terms_nonincreasing() const;
  /// Largest ratio term_{k+1}/term_k over consecutive nonzero terms.
  double max_term_ratio() const;
  /// Smallest such ratio.
  double min_term_ratio() const;
  /// Geometric decay: every consecutive ratio below 1.
  bool geometric_decay() const { return max_term_ratio() < 1.0; }
  /// Terms never shrink.
  bool nondecreasing() const { return min_term_ratio() >= 1.0; }
};

/// sum_{k=1}^{K} nu(M_k, f) / M_k^{1-alpha}, K <= N.
SeriesReport theorem2_series(const StepFunction& f, double alpha, std::size_t K);

/// sum_{k=1}^{K} M_k^alpha M^{-1}(1/M_k). For M(u) = u^p the terms are
/// M_k^{alpha - 1/p}.
SeriesReport corollary_series(const YoungFunction& M, const NumberSystem& ns,
                              double alpha, std::size_t K);

}  // namespace vilenkin
