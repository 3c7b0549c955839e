#include "vilenkin/step_function.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "vilenkin/error.hpp"

namespace vilenkin {

StepFunction::StepFunction(NumberSystem ns)
    : ns_(std::move(ns)), cells_(ns_.size()) {}

StepFunction::StepFunction(NumberSystem ns, std::vector<Complex> cells)
    : ns_(std::move(ns)), cells_(std::move(cells)) {
  if (cells_.size() != ns_.size()) {
    throw ValidationError(fmt::format("step function needs {} cells, got {}",
                                      ns_.size(), cells_.size()));
  }
}

StepFunction StepFunction::constant(const NumberSystem& ns, Complex value) {
  return StepFunction(ns, std::vector<Complex>(ns.size(), value));
}

Complex StepFunction::at(const GroupElement& x) const {
  if (!(x.radix() == ns_.radix())) {
    throw ValidationError("element belongs to a different group");
  }
  return cells_[x.cell()];
}

double StepFunction::sup_norm() const {
  double best = 0.0;
  for (const Complex& v : cells_) best = std::max(best, std::abs(v));
  return best;
}

Complex StepFunction::mean() const {
  Complex sum{};
  for (const Complex& v : cells_) sum += v;
  return sum / static_cast<double>(cells_.size());
}

double StepFunction::mean_abs() const {
  double sum = 0.0;
  for (const Complex& v : cells_) sum += std::abs(v);
  return sum / static_cast<double>(cells_.size());
}

bool StepFunction::is_real() const {
  return std::all_of(cells_.begin(), cells_.end(),
                     [](const Complex& v) { return v.imag() == 0.0; });
}

StepFunction StepFunction::lift(const NumberSystem& finer) const {
  if (!ns_.is_prefix_of(finer)) {
    throw ValidationError(fmt::format("cannot lift from {} to {}",
                                      ns_.radix().label(),
                                      finer.radix().label()));
  }
  // A finer cell's value depends only on its first `resolution()` digits,
  // i.e. on the index modulo M_resolution.
  std::vector<Complex> out(finer.size());
  const Index period = ns_.size();
  for (Index x = 0; x < finer.size(); ++x) out[x] = cells_[x % period];
  return StepFunction(finer, std::move(out));
}

void StepFunction::require_same_domain(const StepFunction& other) const {
  if (!same_domain(other)) {
    throw ValidationError(fmt::format(
        "step functions live on different groups ({} vs {})",
        ns_.radix().label(), other.ns_.radix().label()));
  }
}

StepFunction& StepFunction::operator+=(const StepFunction& other) {
  require_same_domain(other);
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += other.cells_[i];
  return *this;
}

StepFunction& StepFunction::operator-=(const StepFunction& other) {
  require_same_domain(other);
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] -= other.cells_[i];
  return *this;
}

StepFunction& StepFunction::operator*=(Complex scale) {
  for (Complex& v : cells_) v *= scale;
  return *this;
}

StepFunction& StepFunction::multiply(const StepFunction& other) {
  require_same_domain(other);
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] *= other.cells_[i];
  return *this;
}

StepFunction StepFunction::conj() const {
  StepFunction out = *this;
  for (Complex& v : out.cells_) v = std::conj(v);
  return out;
}

CoefficientVector::CoefficientVector(NumberSystem ns)
    : ns_(std::move(ns)), coeffs_(ns_.size()) {}

CoefficientVector::CoefficientVector(NumberSystem ns,
                                     std::vector<Complex> coeffs)
    : ns_(std::move(ns)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != ns_.size()) {
    throw ValidationError(fmt::format("coefficient vector needs {} entries, got {}",
                                      ns_.size(), coeffs_.size()));
  }
}

double CoefficientVector::energy() const {
  double sum = 0.0;
  for (const Complex& c : coeffs_) sum += std::norm(c);
  return sum;
}

}  // namespace vilenkin
