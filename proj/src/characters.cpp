#include "vilenkin/characters.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "vilenkin/error.hpp"

namespace vilenkin {

namespace {

Complex unit_root(unsigned power, unsigned m) {
  if ((4 * power) % m == 0) {
    // Quarter turns are stored exactly: 1, i, -1, -i.
    switch ((4 * power / m) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * power / m;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

CharacterSystem::CharacterSystem(NumberSystem ns) : ns_(std::move(ns)) {
  offsets_.reserve(ns_.resolution());
  for (std::size_t j = 0; j < ns_.resolution(); ++j) {
    offsets_.push_back(roots_.size());
    const unsigned m = ns_.base(j);
    for (unsigned a = 0; a < m; ++a) roots_.push_back(unit_root(a, m));
  }
}

Complex CharacterSystem::rademacher(std::size_t k, Index cell) const {
  if (k >= ns_.resolution()) {
    throw ValidationError(fmt::format("r_{} needs resolution above {}", k,
                                      ns_.resolution()));
  }
  return root(k, ns_.digit(cell, k));
}

Complex CharacterSystem::rademacher_power(std::size_t k, Index power,
                                          Index cell) const {
  if (k >= ns_.resolution()) return {1.0, 0.0};
  return root(k, power % ns_.base(k) * ns_.digit(cell, k));
}

Complex CharacterSystem::operator()(Index n, Index cell) const {
  if (n >= ns_.size()) {
    throw ValidationError(
        fmt::format("frequency {} outside [0, M_N = {})", n, ns_.size()));
  }
  Complex value{1.0, 0.0};
  for (std::size_t j = 0; n != 0; ++j) {
    const unsigned m = ns_.base(j);
    const Index nj = n % m;
    const Index xj = cell % m;
    if (nj != 0 && xj != 0) value *= roots_[offsets_[j] + (nj * xj) % m];
    n /= m;
    cell /= m;
  }
  return value;
}

std::vector<Complex> CharacterSystem::row(Index n) const {
  std::vector<Complex> out(ns_.size());
  for (Index x = 0; x < ns_.size(); ++x) out[x] = (*this)(n, x);
  return out;
}

Complex rademacher(std::size_t k, const GroupElement& x) {
  if (k >= x.resolution()) {
    throw ValidationError(
        fmt::format("r_{} needs resolution above {}", k, x.resolution()));
  }
  const CharacterSystem chars(NumberSystem(x.radix()));
  return chars.rademacher(k, x.cell());
}

Complex vilenkin(Index n, const GroupElement& x) {
  const CharacterSystem chars(NumberSystem(x.radix()));
  return chars(n, x.cell());
}

}  // namespace vilenkin
