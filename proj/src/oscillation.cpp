#include "vilenkin/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "vilenkin/error.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

namespace {

void require_scale(const StepFunction& f, std::size_t k) {
  if (k > f.resolution()) {
    throw ValidationError(fmt::format("scale {} exceeds resolution {}", k,
                                      f.resolution()));
  }
}

// Diameter of {f(residue + i M_k)} over the coset of cells congruent to
// `residue` modulo M_k.
double coset_diameter(const StepFunction& f, Index residue, Index stride,
                      bool real_valued) {
  if (real_valued) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Index x = residue; x < f.size(); x += stride) {
      lo = std::min(lo, f[x].real());
      hi = std::max(hi, f[x].real());
    }
    return hi - lo;
  }
  double best = 0.0;
  for (Index x = residue; x < f.size(); x += stride) {
    for (Index y = x + stride; y < f.size(); y += stride) {
      best = std::max(best, std::abs(f[x] - f[y]));
    }
  }
  return best;
}

// Oscillation of every I_k-coset, indexed by the cell residue modulo M_k.
std::vector<double> coset_diameters(const StepFunction& f, std::size_t k,
                                    bool real_valued) {
  const Index stride = f.ns().block(k);
  std::vector<double> out(stride);
  for (Index r = 0; r < stride; ++r) out[r] = coset_diameter(f, r, stride, real_valued);
  return out;
}

}  // namespace

double coset_oscillation(const StepFunction& f, std::size_t k, Index beta) {
  require_scale(f, k);
  const Index residue = coset_cell(f.ns(), beta, k);
  return coset_diameter(f, residue, f.ns().block(k), f.is_real());
}

double modulus_of_continuity(const StepFunction& f, std::size_t k) {
  require_scale(f, k);
  const auto diam = coset_diameters(f, k, f.is_real());
  return *std::max_element(diam.begin(), diam.end());
}

double OscillationProfile::bo_score() const {
  return O_running_sup.empty() ? 0.0 : O_running_sup.back();
}

OscillationProfile oscillation_profile(const StepFunction& f) {
  const bool real_valued = f.is_real();
  OscillationProfile profile;
  double running = 0.0;
  for (std::size_t k = 0; k <= f.resolution(); ++k) {
    const auto diam = coset_diameters(f, k, real_valued);
    double total = 0.0;
    for (double d : diam) total += d;
    // Residue 0 is the coset of Z_0^{(k)} = 0, i.e. I_k itself.
    const double without_zero = total - diam[0];
    running = std::max(running, without_zero);
    profile.block.push_back(f.ns().block(k));
    profile.omega.push_back(*std::max_element(diam.begin(), diam.end()));
    profile.O.push_back(without_zero);
    profile.nu.push_back(total);
    profile.O_running_sup.push_back(running);
  }
  return profile;
}

YoungFunction YoungFunction::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError(fmt::format("power Young function needs p >= 1, got {}", p));
  }
  YoungFunction M;
  M.kind_ = Kind::power;
  M.p_ = p;
  return M;
}

YoungFunction YoungFunction::table(std::vector<double> u, std::vector<double> M) {
  if (u.size() != M.size() || u.size() < 2) {
    throw DomainError("tabulated Young function needs >= 2 matching knots");
  }
  if (u[0] != 0.0 || M[0] != 0.0) {
    throw DomainError("tabulated Young function must pass through (0, 0)");
  }
  double previous_slope = 0.0;
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (!(u[i] > u[i - 1]) || !(M[i] > M[i - 1])) {
      throw DomainError("tabulated Young function must be strictly increasing");
    }
    const double slope = (M[i] - M[i - 1]) / (u[i] - u[i - 1]);
    if (slope < previous_slope * (1.0 - 1e-12)) {
      throw DomainError("tabulated Young function must be convex");
    }
    previous_slope = slope;
  }
  YoungFunction out;
  out.kind_ = Kind::table;
  out.u_ = std::move(u);
  out.M_ = std::move(M);
  return out;
}

double YoungFunction::operator()(double u) const {
  if (!(u >= 0.0)) {
    throw DomainError(fmt::format("Young function evaluated at {}", u));
  }
  if (kind_ == Kind::power) return std::pow(u, p_);
  const auto it = std::upper_bound(u_.begin(), u_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - u_.begin());
  i = std::clamp<std::size_t>(i, 1, u_.size() - 1);
  const double slope = (M_[i] - M_[i - 1]) / (u_[i] - u_[i - 1]);
  return M_[i - 1] + slope * (u - u_[i - 1]);
}

double YoungFunction::inverse(double v) const {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(fmt::format("Young inverse evaluated at {}", v));
  }
  if (v == 0.0) return 0.0;
  if (kind_ == Kind::power) return std::pow(v, 1.0 / p_);
  double lo = 0.0;
  double hi = 1.0;
  while ((*this)(hi) < v) hi *= 2.0;
  for (int iter = 0; iter < 400 && hi - lo > 1e-10 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    ((*this)(mid) < v ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double bo_m_score(const StepFunction& f, const YoungFunction& M) {
  const bool real_valued = f.is_real();
  double best = 0.0;
  for (std::size_t k = 0; k <= f.resolution(); ++k) {
    const auto diam = coset_diameters(f, k, real_valued);
    double total = 0.0;
    for (Index r = 1; r < diam.size(); ++r) total += M(diam[r]);
    best = std::max(best, total);
  }
  return best;
}

double theorem1_condition(const StepFunction& f, std::size_t k, double alpha) {
  require_negative_order(alpha);
  const NumberSystem& ns = f.ns();
  if (k >= ns.resolution()) {
    throw ValidationError(fmt::format(
        "theorem 1 condition at k = {} needs e_k, resolution is {}", k,
        ns.resolution()));
  }
  const Index e_k = ns.block(k);
  std::vector<Index> reps(ns.block(k));
  std::vector<double> weights(ns.block(k));
  for (Index beta = 1; beta < ns.block(k); ++beta) {
    reps[beta] = coset_cell(ns, beta, k);
    weights[beta] = std::pow(static_cast<double>(beta), alpha - 1.0);
  }
  double best = 0.0;
  for (Index x = 0; x < ns.size(); ++x) {
    double sum = 0.0;
    for (Index beta = 1; beta < ns.block(k); ++beta) {
      const Index shifted = ns.sub(x, reps[beta]);
      sum += weights[beta] * std::abs(f[shifted] - f[ns.sub(shifted, e_k)]);
    }
    best = std::max(best, sum);
  }
  return best;
}

bool SeriesReport::terms_nonincreasing() const {
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i] > terms[i - 1]) return false;
  }
  return true;
}

double SeriesReport::max_term_ratio() const {
  double best = 0.0;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i - 1] > 0.0) best = std::max(best, terms[i] / terms[i - 1]);
  }
  return best;
}

double SeriesReport::min_term_ratio() const {
  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i - 1] > 0.0) {
      best = std::min(best, terms[i] / terms[i - 1]);
      any = true;
    }
  }
  return any ? best : 0.0;
}

namespace {

SeriesReport accumulate(std::vector<double> terms) {
  SeriesReport report;
  double sum = 0.0;
  for (double t : terms) {
    sum += t;
    report.partial_sums.push_back(sum);
  }
  report.terms = std::move(terms);
  return report;
}

}  // namespace

SeriesReport theorem2_series(const StepFunction& f, double alpha, std::size_t K) {
  require_negative_order(alpha);
  require_scale(f, K);
  const bool real_valued = f.is_real();
  std::vector<double> terms;
  for (std::size_t k = 1; k <= K; ++k) {
    const auto diam = coset_diameters(f, k, real_valued);
    double nu = 0.0;
    for (double d : diam) nu += d;
    terms.push_back(nu / std::pow(static_cast<double>(f.ns().block(k)), 1.0 - alpha));
  }
  return accumulate(std::move(terms));
}

SeriesReport corollary_series(const YoungFunction& M, const NumberSystem& ns,
                              double alpha, std::size_t K) {
  require_negative_order(alpha);
  if (K > ns.resolution()) {
    throw ValidationError(
        fmt::format("K = {} exceeds resolution {}", K, ns.resolution()));
  }
  std::vector<double> terms;
  for (std::size_t k = 1; k <= K; ++k) {
    const double Mk = static_cast<double>(ns.block(k));
    terms.push_back(std::pow(Mk, alpha) * M.inverse(1.0 / Mk));
  }
  return accumulate(std::move(terms));
}

}  // namespace vilenkin
