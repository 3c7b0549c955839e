#pragma once

#include <cstddef>
#include <span>

#include "vilenkin/step_function.hpp"

namespace vilenkin {

enum class TransformStrategy {
  /// f^(k) = (1/M_N) sum_x f(x) conj(psi_k(x)); O(M_N^2 N).
  naive,
  /// One pass of M_N/m_j independent m_j-point DFTs per axis j.
  fast,
};

/// Fourier coefficients f^(k) = integral of f conj(psi_k), k < M_N.
///
/// psi_n(x) = prod_j exp(2 pi i n_j x_j / m_j) pairs digit j of the frequency
/// with coordinate j of the point only, so the transform is a tensor product
/// of small DFTs with no twiddle factors between axes.
CoefficientVector forward(const StepFunction& f,
                          TransformStrategy strategy = TransformStrategy::fast);

/// Fast forward transform applying the axes in the given order (a
/// permutation of 0..N-1). The result does not depend on the order.
CoefficientVector forward(const StepFunction& f,
                          std::span<const std::size_t> axis_order);

/// Synthesis sum_k c_k psi_k.
StepFunction inverse(const CoefficientVector& c,
                     TransformStrategy strategy = TransformStrategy::fast);

/// S_n f = sum_{k<n} f^(k) psi_k, with S_0 f = 0.
StepFunction partial_sum(const StepFunction& f, Index n);

/// sigma_n f = (1/n) sum_{k=1}^{n} S_k f.
StepFunction fejer_mean(const StepFunction& f, Index n);

enum class CesaroRoute {
  /// (1/A_{n-1}^{-a}) sum_{v<n} A_{n-1-v}^{-a} f^(v) psi_v
  coefficients,
  /// (1/A_{n-1}^{-a}) sum_{v=0}^{n} A_{n-v}^{-a-1} S_v f
  partial_sums,
  /// f * K_n^{-a}
  convolution,
};

/// Cesaro mean of negative order sigma_n^{-alpha} f for alpha in (0, 1).
StepFunction cesaro_mean(const StepFunction& f, Index n, double alpha,
                         CesaroRoute route = CesaroRoute::coefficients);

enum class ConvolutionMethod {
  /// (1/M_N) sum_t f(x - t) g(t).
  direct,
  /// Pointwise product of coefficient vectors.
  spectral,
};

/// Group convolution (f * g)(x) = integral f(x - t) g(t) dmu(t).
StepFunction convolve(const StepFunction& f, const StepFunction& g,
                      ConvolutionMethod method = ConvolutionMethod::spectral);

/// sup_x |f(x) - g(x)|.
double sup_distance(const StepFunction& f, const StepFunction& g);

/// Throws DomainError unless 0 < alpha < 1.
void require_negative_order(double alpha);

}  // namespace vilenkin
