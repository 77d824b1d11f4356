#include "nsdecay/decay_constants.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nsdecay/errors.hpp"

namespace nsdecay {
namespace {

void check_query(const DecayQuery& q) {
  if (!(q.alpha >= 0.0) || !std::isfinite(q.alpha)) {
    throw DomainError("alpha must be a finite value >= 0");
  }
  if (q.m < 0) throw DomainError("m must be >= 0, got " + std::to_string(q.m));
}

}  // namespace

double k_objective(double delta, const DecayQuery& q) {
  check_query(q);
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  double log_sum = -std::log(delta);
  for (int j = 0; j <= q.m; ++j) log_sum += std::log(q.alpha + 0.5 * j + delta);
  return std::exp(0.5 * log_sum);
}

double k_stationarity(double delta, const DecayQuery& q) {
  check_query(q);
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  double g = -1.0;
  for (int j = 0; j <= q.m; ++j) g += delta / (q.alpha + 0.5 * j + delta);
  return g;
}

ConstantResult k_constant(const DecayQuery& q) {
  check_query(q);
  ConstantResult r;

  if (q.alpha == 0.0) {
    // The j = 0 factor cancels delta^{-1/2}; f increases in delta.
    double log_sum = 0.0;
    for (int j = 1; j <= q.m; ++j) log_sum += std::log(0.5 * j);
    r.K = std::exp(0.5 * log_sum);
    r.delta_star = 0.0;
    r.location = DeltaLocation::kZeroLimit;
    return r;
  }
  if (q.m == 0) {
    r.K = 1.0;
    r.delta_star = std::numeric_limits<double>::infinity();
    r.location = DeltaLocation::kInfinityLimit;
    return r;
  }

  // g(0+) = -1 and g(inf) = m > 0: exactly one sign change.
  double lo = 1e-9;
  double hi = std::max(1.0, 2.0 * (q.alpha + q.m)) * 1e3;
  while (k_stationarity(lo, q) > 0.0 && lo > std::numeric_limits<double>::min() * 1e3) lo *= 1e-3;
  while (k_stationarity(hi, q) < 0.0 && hi < std::numeric_limits<double>::max() * 1e-3) hi *= 1e3;

  for (int iter = 0; iter < 400 && (hi - lo) > 1e-12 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (k_stationarity(mid, q) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);
  r.delta_star = root;
  r.K = k_objective(root, q);
  r.location = DeltaLocation::kInterior;
  r.attained = true;
  r.stationarity_residual = std::abs(k_stationarity(root, q));
  return r;
}

const char* to_string(DeltaLocation location) noexcept {
  switch (location) {
    case DeltaLocation::kInterior:
      return "interior";
    case DeltaLocation::kZeroLimit:
      return "zero-limit";
    case DeltaLocation::kInfinityLimit:
      return "infinity-limit";
  }
  return "unknown";
}

}  // namespace nsdecay
