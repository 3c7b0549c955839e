#include "vilenkin/group.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "vilenkin/error.hpp"

namespace vilenkin {

namespace {

// Keeps every cell index and frequency exactly representable as a signed
// 64-bit integer.
constexpr Index kMaxCells = Index{1} << 62;

}  // namespace

RadixSequence::RadixSequence(std::vector<unsigned> radices)
    : radices_(std::move(radices)) {
  if (radices_.empty()) {
    throw ValidationError("radix sequence must be nonempty");
  }
  for (std::size_t j = 0; j < radices_.size(); ++j) {
    if (radices_[j] < 2) {
      throw ValidationError(
          fmt::format("radix m_{} = {} is below 2", j, radices_[j]));
    }
  }
  max_radix_ = *std::max_element(radices_.begin(), radices_.end());
}

RadixSequence RadixSequence::constant(unsigned radix, std::size_t length) {
  return RadixSequence(std::vector<unsigned>(length, radix));
}

RadixSequence RadixSequence::repeating(const std::vector<unsigned>& pattern,
                                       std::size_t length) {
  if (pattern.empty()) {
    throw ValidationError("radix pattern must be nonempty");
  }
  std::vector<unsigned> out(length);
  for (std::size_t j = 0; j < length; ++j) out[j] = pattern[j % pattern.size()];
  return RadixSequence(std::move(out));
}

RadixSequence RadixSequence::prefix(std::size_t length) const {
  if (length == 0 || length > radices_.size()) {
    throw ValidationError(fmt::format("prefix length {} outside [1, {}]",
                                      length, radices_.size()));
  }
  return RadixSequence(
      std::vector<unsigned>(radices_.begin(), radices_.begin() + length));
}

std::string RadixSequence::label() const {
  if (std::all_of(radices_.begin(), radices_.end(),
                  [&](unsigned r) { return r == radices_.front(); })) {
    return fmt::format("{}x{}", radices_.front(), radices_.size());
  }
  return fmt::format("{}", fmt::join(radices_, "-"));
}

NumberSystem::NumberSystem(RadixSequence radix) : radix_(std::move(radix)) {
  ladder_.reserve(radix_.size() + 1);
  ladder_.push_back(1);
  for (unsigned m : radix_.radices()) {
    if (ladder_.back() > kMaxCells / m) {
      throw ConfigError(fmt::format(
          "M_{} overflows the exact integer range", ladder_.size()));
    }
    ladder_.push_back(ladder_.back() * m);
  }
}

NumberSystem build_number_system(const RadixSequence& radix) {
  return NumberSystem(radix);
}

void NumberSystem::check_cell(Index x) const {
  if (x >= size()) {
    throw ValidationError(
        fmt::format("index {} outside [0, M_N = {})", x, size()));
  }
}

std::vector<unsigned> NumberSystem::digits_of(Index n) const {
  check_cell(n);
  std::vector<unsigned> digits(resolution());
  for (std::size_t j = 0; j < resolution(); ++j) {
    digits[j] = static_cast<unsigned>(n % radix_[j]);
    n /= radix_[j];
  }
  return digits;
}

Index NumberSystem::index_of(std::span<const unsigned> digits) const {
  if (digits.size() != resolution()) {
    throw ValidationError(fmt::format("expected {} digits, got {}",
                                      resolution(), digits.size()));
  }
  Index n = 0;
  for (std::size_t j = 0; j < digits.size(); ++j) {
    if (digits[j] >= radix_[j]) {
      throw ValidationError(fmt::format("digit x_{} = {} not below m_{} = {}",
                                        j, digits[j], j, radix_[j]));
    }
    n += digits[j] * ladder_[j];
  }
  return n;
}

Index NumberSystem::truncation(Index n, int A) const {
  if (n > size()) {
    throw ValidationError(fmt::format("n = {} exceeds M_N = {}", n, size()));
  }
  if (A < 0) return 0;
  if (static_cast<std::size_t>(A) >= resolution()) return n;
  return n % ladder_[static_cast<std::size_t>(A) + 1];
}

std::size_t NumberSystem::leading_position(Index n) const {
  if (n == 0 || n > size()) {
    throw ValidationError(
        fmt::format("leading position needs 1 <= n <= M_N, got {}", n));
  }
  std::size_t A = 0;
  while (A < resolution() && ladder_[A + 1] <= n) ++A;
  return A;
}

std::size_t NumberSystem::first_nonzero(Index cell) const {
  for (std::size_t j = 0; j < resolution(); ++j) {
    if (cell % radix_[j] != 0) return j;
    cell /= radix_[j];
  }
  return resolution();
}

Index NumberSystem::add(Index x, Index y) const {
  check_cell(x);
  check_cell(y);
  Index out = 0;
  for (std::size_t j = 0; j < resolution(); ++j) {
    const Index m = radix_[j];
    out += ((x % m + y % m) % m) * ladder_[j];
    x /= m;
    y /= m;
  }
  return out;
}

Index NumberSystem::sub(Index x, Index y) const {
  check_cell(x);
  check_cell(y);
  Index out = 0;
  for (std::size_t j = 0; j < resolution(); ++j) {
    const Index m = radix_[j];
    out += ((x % m + m - y % m) % m) * ladder_[j];
    x /= m;
    y /= m;
  }
  return out;
}

Index NumberSystem::neg(Index x) const { return sub(0, x); }

NumberSystem NumberSystem::truncated(std::size_t resolution) const {
  return NumberSystem(radix_.prefix(resolution));
}

bool NumberSystem::is_prefix_of(const NumberSystem& finer) const {
  if (resolution() > finer.resolution()) return false;
  return std::equal(radix_.radices().begin(), radix_.radices().end(),
                    finer.radix_.radices().begin());
}

GroupElement::GroupElement(RadixSequence radix, std::vector<unsigned> digits)
    : radix_(std::move(radix)), digits_(std::move(digits)) {
  if (digits_.size() != radix_.size()) {
    throw ValidationError(fmt::format("element has {} digits for {} radices",
                                      digits_.size(), radix_.size()));
  }
  for (std::size_t j = 0; j < digits_.size(); ++j) {
    if (digits_[j] >= radix_[j]) {
      throw ValidationError(fmt::format("digit x_{} = {} not below m_{} = {}",
                                        j, digits_[j], j, radix_[j]));
    }
  }
}

GroupElement GroupElement::zero(const RadixSequence& radix) {
  return GroupElement(radix, std::vector<unsigned>(radix.size(), 0));
}

GroupElement GroupElement::unit(const RadixSequence& radix, std::size_t n) {
  if (n >= radix.size()) {
    throw ValidationError(
        fmt::format("e_{} needs resolution above {}", n, radix.size()));
  }
  std::vector<unsigned> digits(radix.size(), 0);
  digits[n] = 1;
  return GroupElement(radix, std::move(digits));
}

GroupElement GroupElement::from_cell(const NumberSystem& ns, Index cell) {
  return GroupElement(ns.radix(), ns.digits_of(cell));
}

Index GroupElement::cell() const {
  Index n = 0;
  Index weight = 1;
  for (std::size_t j = 0; j < digits_.size(); ++j) {
    n += digits_[j] * weight;
    weight *= radix_[j];
  }
  return n;
}

GroupElement add(const GroupElement& x, const GroupElement& y) {
  if (!(x.radix() == y.radix())) {
    throw ValidationError("cannot add elements of different groups");
  }
  std::vector<unsigned> digits(x.resolution());
  for (std::size_t j = 0; j < digits.size(); ++j) {
    digits[j] = (x[j] + y[j]) % x.radix()[j];
  }
  return GroupElement(x.radix(), std::move(digits));
}

GroupElement neg(const GroupElement& x) {
  std::vector<unsigned> digits(x.resolution());
  for (std::size_t j = 0; j < digits.size(); ++j) {
    const unsigned m = x.radix()[j];
    digits[j] = (m - x[j]) % m;
  }
  return GroupElement(x.radix(), std::move(digits));
}

Index coset_cell(const NumberSystem& ns, Index beta, std::size_t k) {
  if (k > ns.resolution()) {
    throw ValidationError(
        fmt::format("scale {} exceeds resolution {}", k, ns.resolution()));
  }
  if (beta >= ns.block(k)) {
    throw ValidationError(
        fmt::format("beta = {} outside [0, M_{} = {})", beta, k, ns.block(k)));
  }
  // Reversed mixed-radix decoding: x_{k-1} has weight 1, x_{k-2} weight
  // m_{k-1}, and so on down to x_0 with weight M_k / M_1.
  Index cell = 0;
  for (std::size_t j = k; j-- > 0;) {
    cell += (beta % ns.base(j)) * ns.block(j);
    beta /= ns.base(j);
  }
  return cell;
}

GroupElement coset_rep(Index beta, std::size_t k, const NumberSystem& ns) {
  return GroupElement::from_cell(ns, coset_cell(ns, beta, k));
}

CosetIndex coset_of(const NumberSystem& ns, Index cell, std::size_t k) {
  if (k > ns.resolution()) {
    throw ValidationError(
        fmt::format("scale {} exceeds resolution {}", k, ns.resolution()));
  }
  if (cell >= ns.size()) {
    throw ValidationError(fmt::format("cell {} outside [0, {})", cell, ns.size()));
  }
  Index beta = 0;
  for (std::size_t j = 0; j < k; ++j) {
    beta = beta * ns.base(j) + ns.digit(cell, j);
  }
  return {beta, k};
}

}  // namespace vilenkin
