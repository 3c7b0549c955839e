#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vilenkin/step_function.hpp"

namespace vilenkin {

/// f = sum_{k<N} c_k Re psi_{M_k}; the k-th term depends only on x_k.
StepFunction lacunary(const NumberSystem& ns, std::span<const double> coeffs);

/// c_k = M_k^{-s} for k < N.
std::vector<double> inverse_scale_coefficients(const NumberSystem& ns, double s);

/// Indicator of I_j + Z_beta^{(j)}.
StepFunction digit_indicator(const NumberSystem& ns, std::size_t j, Index beta);

/// f(x) = sum_k u_k x_k / (m_k M_k) with u_k uniform in [-bound, bound].
StepFunction random_lipschitz(const NumberSystem& ns, std::uint64_t seed,
                              double bound = 1.0);

/// psi_n.
StepFunction character_function(const NumberSystem& ns, Index n);

/// Cell values uniform in [-1, 1] (real) from the seed.
StepFunction random_cells(const NumberSystem& ns, std::uint64_t seed,
                          bool complex_values = false);

}  // namespace vilenkin
