#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "vilenkin/group.hpp"

namespace vilenkin {

using Complex = std::complex<double>;

/// Evaluates generalized Rademacher functions r_k(x) = exp(2 pi i x_k / m_k)
/// and Vilenkin characters psi_n = prod_k r_k^{n_k}.
///
/// Every value is a product of entries of a per-coordinate table of m_k-th
/// roots of unity, so equal angles give bit-identical values. Roots at
/// quarter turns are stored exactly; in the Walsh case every character is
/// exactly +1 or -1.
class CharacterSystem {
 public:
  explicit CharacterSystem(NumberSystem ns);

  const NumberSystem& ns() const { return ns_; }

  /// exp(2 pi i power / m_j), power reduced mod m_j.
  Complex root(std::size_t j, Index power) const {
    return roots_[offsets_[j] + power % ns_.base(j)];
  }

  /// r_k at the cell with the given index.
  Complex rademacher(std::size_t k, Index cell) const;

  /// r_k^{power}; coordinates k >= N read as digit 0, so the value is 1.
  Complex rademacher_power(std::size_t k, Index power, Index cell) const;

  /// psi_n at a cell. Depends only on digits x_0..x_A with M_A <= n < M_{A+1}.
  Complex operator()(Index n, Index cell) const;

  /// psi_n on every I_N-cell.
  std::vector<Complex> row(Index n) const;

 private:
  NumberSystem ns_;
  std::vector<std::size_t> offsets_;
  std::vector<Complex> roots_;
};

Complex rademacher(std::size_t k, const GroupElement& x);
Complex vilenkin(Index n, const GroupElement& x);

}  // namespace vilenkin
