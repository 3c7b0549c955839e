#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vilenkin/step_function.hpp"

namespace vilenkin {

enum class KernelStrategy {
  /// Direct character sum sum_{k<n} psi_k.
  naive,
  /// D_{M_k} = M_k on I_k and 0 elsewhere; only for n = M_k.
  closed,
  /// Product form D_n = psi_n sum_j D_{M_j} sum_{a=m_j-n_j}^{m_j-1} r_j^a.
  recursive,
};

/// Dirichlet kernel D_n for 0 <= n <= M_N, with D_0 = 0.
StepFunction dirichlet(const NumberSystem& ns, Index n,
                       KernelStrategy strategy = KernelStrategy::recursive);

/// D_0, D_1, ..., D_{max_n} by running character sums.
std::vector<StepFunction> dirichlet_sequence(const NumberSystem& ns, Index max_n);

/// Fejer kernel K_n = (1/n) sum_{k=1}^{n} D_k, n >= 1.
StepFunction fejer_kernel(const NumberSystem& ns, Index n);

/// K_n^{-alpha} = (1/A_{n-1}^{-alpha}) sum_{v<n} A_{n-1-v}^{-alpha} psi_v
/// for alpha in (0, 1) and 1 <= n <= M_N.
StepFunction cesaro_kernel(const NumberSystem& ns, Index n, double alpha);

/// sum_v weights[v] psi_v, materialized at the smallest resolution that
/// carries every nonzero weight and lifted to `ns`.
StepFunction kernel_from_weights(const NumberSystem& ns,
                                 std::span<const double> weights);

/// Maximum absolute residual of each Dirichlet identity over every
/// admissible parameter tuple and every cell.
struct RecursionReport {
  /// D_n = (1 - psi_{M_k}^{n_k})/(1 - psi_{M_k}) D_{M_k} + psi_{M_k}^{n_k} D_{n'}
  double split = 0.0;
  /// D_{j + n_k M_k} = D_{n_k M_k} + psi_{n_k M_k} D_j
  double shift = 0.0;
  /// D_{j + r M_k} = (sum_{q<r} psi_{M_k}^q) D_{M_k} + psi_{M_k}^r D_j
  double geometric = 0.0;
  /// D_{n_s M_s - j} = D_{n_s M_s} - psi_{n_s M_s - 1} conj(D_j)
  double reflection = 0.0;
  /// The same reflection with "+" in front of the conjugate term. It does not
  /// hold; kept for reference.
  double reflection_plus_sign = 0.0;
  /// Product form against the running character sums.
  double product_form = 0.0;
  /// D_{M_k} against M_k times the indicator of I_k.
  double closed_form = 0.0;
  std::size_t tuples = 0;

  /// Largest residual among the identities that hold.
  double max_residual() const;
};

RecursionReport verify_dirichlet_recursions(const NumberSystem& ns, Index max_n);

/// Which index the first sum of the decomposition starts from.
enum class Lemma1Reading {
  /// sum_{k=0}^{A}: the identity.
  from_zero,
  /// sum_{k=1}^{A}: drops the k = 0 block.
  from_one,
};

/// max over cells of |LHS - RHS| for
///   sum_{j=1}^{n} A_{n-j}^{-a-1} D_j
///     = sum_k P_k D_{n_k M_k} A_{n^(k)-1}^{-a}
///       - sum_k P_k psi_{n_k M_k - 1} sum_{j<n_k M_k} A_{n^(k-1)+j}^{-a-1} conj(D_j)
/// with P_k = prod_{l=k+1}^{A} psi_{n_l M_l} and 1 <= n <= M_N.
double lemma1_residual(const NumberSystem& ns, Index n, double alpha,
                       Lemma1Reading reading = Lemma1Reading::from_zero);

/// Same, reusing a precomputed D_0..D_n table (size > n).
double lemma1_residual(std::span<const StepFunction> dirichlet_table, Index n,
                       double alpha,
                       Lemma1Reading reading = Lemma1Reading::from_zero);

}  // namespace vilenkin
