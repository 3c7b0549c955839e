#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vilenkin {

/// Cell indices of step functions and frequencies of characters share this
/// type: both are integers in [0, M_N).
using Index = std::uint64_t;

/// The radices m_0, ..., m_{N-1} of a bounded Vilenkin group truncated at
/// resolution N.
class RadixSequence {
 public:
  explicit RadixSequence(std::vector<unsigned> radices);

  static RadixSequence constant(unsigned radix, std::size_t length);
  /// `pattern` repeated until `length` entries are produced.
  static RadixSequence repeating(const std::vector<unsigned>& pattern,
                                 std::size_t length);

  std::span<const unsigned> radices() const { return radices_; }
  unsigned operator[](std::size_t j) const { return radices_[j]; }
  std::size_t size() const { return radices_.size(); }
  unsigned max_radix() const { return max_radix_; }
  bool is_walsh() const { return max_radix_ == 2; }

  /// The first `length` radices.
  RadixSequence prefix(std::size_t length) const;

  /// Compact label such as "2x6" or "2-3-4-2".
  std::string label() const;

  bool operator==(const RadixSequence&) const = default;

 private:
  std::vector<unsigned> radices_;
  unsigned max_radix_ = 0;
};

/// The generalized number system M_0 = 1, M_{k+1} = m_k M_k.
///
/// Cell indices use natural mixed-radix weights: the I_N-cell of x is
/// sum_j x_j M_j. All digit arithmetic below works on these indices.
class NumberSystem {
 public:
  explicit NumberSystem(RadixSequence radix);

  const RadixSequence& radix() const { return radix_; }
  std::size_t resolution() const { return radix_.size(); }
  unsigned base(std::size_t j) const { return radix_[j]; }
  /// M_k for 0 <= k <= N.
  Index block(std::size_t k) const { return ladder_[k]; }
  /// M_N, the number of I_N-cells.
  Index size() const { return ladder_.back(); }
  std::span<const Index> ladder() const { return ladder_; }

  /// Digit j of n in the mixed-radix expansion (j < N).
  unsigned digit(Index n, std::size_t j) const {
    return static_cast<unsigned>((n / ladder_[j]) % radix_[j]);
  }
  std::vector<unsigned> digits_of(Index n) const;
  Index index_of(std::span<const unsigned> digits) const;

  /// n^{(A)} = n_A M_A + ... + n_0 M_0, with n^{(-1)} = 0. Accepts n <= M_N.
  Index truncation(Index n, int A) const;

  /// A such that M_A <= n < M_{A+1}; returns N for n = M_N. Requires n >= 1.
  std::size_t leading_position(Index n) const;

  /// Position of the first nonzero digit of a cell, or N for the zero cell.
  std::size_t first_nonzero(Index cell) const;

  Index add(Index x, Index y) const;
  Index sub(Index x, Index y) const;
  Index neg(Index x) const;

  /// The number system of the first `resolution` radices.
  NumberSystem truncated(std::size_t resolution) const;
  /// True when this system's radices are a prefix of `finer`'s.
  bool is_prefix_of(const NumberSystem& finer) const;

  bool operator==(const NumberSystem& other) const {
    return radix_ == other.radix_;
  }

 private:
  void check_cell(Index x) const;

  RadixSequence radix_;
  std::vector<Index> ladder_;
};

NumberSystem build_number_system(const RadixSequence& radix);

/// A point of G_m at finite resolution, stored as little-endian digits.
class GroupElement {
 public:
  GroupElement(RadixSequence radix, std::vector<unsigned> digits);

  static GroupElement zero(const RadixSequence& radix);
  /// e_n: digit 1 at coordinate n, zero elsewhere.
  static GroupElement unit(const RadixSequence& radix, std::size_t n);
  static GroupElement from_cell(const NumberSystem& ns, Index cell);

  const RadixSequence& radix() const { return radix_; }
  std::span<const unsigned> digits() const { return digits_; }
  std::size_t resolution() const { return digits_.size(); }
  unsigned operator[](std::size_t j) const { return digits_[j]; }

  /// Cell index sum_j x_j M_j.
  Index cell() const;

  bool operator==(const GroupElement&) const = default;

 private:
  RadixSequence radix_;
  std::vector<unsigned> digits_;
};

GroupElement add(const GroupElement& x, const GroupElement& y);
GroupElement neg(const GroupElement& x);
inline GroupElement operator+(const GroupElement& x, const GroupElement& y) {
  return add(x, y);
}
inline GroupElement operator-(const GroupElement& x) { return neg(x); }
inline GroupElement operator-(const GroupElement& x, const GroupElement& y) {
  return add(x, neg(y));
}

/// Index beta of the coset I_k + Z_beta^{(k)} at scale k.
struct CosetIndex {
  Index beta = 0;
  std::size_t scale = 0;
};

// Coset representatives use reversed weights: digit x_j of Z_beta^{(k)}
// carries weight M_k / M_{j+1}, so beta = sum_{j<k} x_j M_k / M_{j+1}.

/// Z_beta^{(k)} = (x_0, ..., x_{k-1}, 0, ...).
GroupElement coset_rep(Index beta, std::size_t k, const NumberSystem& ns);
/// Cell index of Z_beta^{(k)}.
Index coset_cell(const NumberSystem& ns, Index beta, std::size_t k);
/// The beta whose coset I_k + Z_beta^{(k)} contains `cell`.
CosetIndex coset_of(const NumberSystem& ns, Index cell, std::size_t k);

}  // namespace vilenkin
