#pragma once

#include <complex>
#include <span>
#include <vector>

#include "vilenkin/characters.hpp"
#include "vilenkin/group.hpp"

namespace vilenkin {

/// A complex function on G_m that is constant on every I_N-cell, stored as
/// one value per cell in natural cell-index order. Haar measure gives each
/// cell weight 1/M_N, so integrals are plain cell averages.
class StepFunction {
 public:
  /// Zero function.
  explicit StepFunction(NumberSystem ns);
  StepFunction(NumberSystem ns, std::vector<Complex> cells);

  static StepFunction constant(const NumberSystem& ns, Complex value);
  template <typename F>
  static StepFunction from_cells(const NumberSystem& ns, F&& value_at) {
    std::vector<Complex> cells(ns.size());
    for (Index x = 0; x < ns.size(); ++x) cells[x] = value_at(x);
    return StepFunction(ns, std::move(cells));
  }

  const NumberSystem& ns() const { return ns_; }
  std::size_t resolution() const { return ns_.resolution(); }
  Index size() const { return cells_.size(); }

  std::span<const Complex> cells() const { return cells_; }
  std::span<Complex> cells() { return cells_; }
  Complex operator[](Index cell) const { return cells_[cell]; }
  Complex& operator[](Index cell) { return cells_[cell]; }
  Complex at(const GroupElement& x) const;

  /// ||f||_C; exact for step functions.
  double sup_norm() const;
  /// Integral over G_m.
  Complex mean() const;
  /// Integral of |f|.
  double mean_abs() const;
  bool is_real() const;

  /// The same function viewed at a finer resolution whose radices extend
  /// this one's.
  StepFunction lift(const NumberSystem& finer) const;

  bool same_domain(const StepFunction& other) const { return ns_ == other.ns_; }

  StepFunction& operator+=(const StepFunction& other);
  StepFunction& operator-=(const StepFunction& other);
  StepFunction& operator*=(Complex scale);
  /// Pointwise product.
  StepFunction& multiply(const StepFunction& other);

  friend StepFunction operator+(StepFunction a, const StepFunction& b) {
    return a += b;
  }
  friend StepFunction operator-(StepFunction a, const StepFunction& b) {
    return a -= b;
  }
  friend StepFunction operator*(Complex s, StepFunction a) { return a *= s; }
  friend StepFunction operator*(StepFunction a, Complex s) { return a *= s; }

  /// Complex conjugate.
  StepFunction conj() const;

 private:
  void require_same_domain(const StepFunction& other) const;

  NumberSystem ns_;
  std::vector<Complex> cells_;
};

/// Fourier coefficients f^(0) .. f^(M_N - 1) of a resolution-N function.
class CoefficientVector {
 public:
  explicit CoefficientVector(NumberSystem ns);
  CoefficientVector(NumberSystem ns, std::vector<Complex> coeffs);

  const NumberSystem& ns() const { return ns_; }
  Index size() const { return coeffs_.size(); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  Complex operator[](Index k) const { return coeffs_[k]; }
  Complex& operator[](Index k) { return coeffs_[k]; }

  /// sum_k |f^(k)|^2.
  double energy() const;

 private:
  NumberSystem ns_;
  std::vector<Complex> coeffs_;
};

}  // namespace vilenkin
