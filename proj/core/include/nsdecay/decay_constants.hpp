#pragma once

namespace nsdecay {

/// Decay exponent alpha >= 0 and derivative order m >= 0 (m = 0 is a
/// degenerate extension; the estimate is meaningful for m >= 1).
struct DecayQuery {
  double alpha = 0.0;
  int m = 1;
};

/// Where the infimum over delta is reached.
enum class DeltaLocation {
  kInterior,       ///< unique stationary point, minimum attained
  kZeroLimit,      ///< alpha = 0: infimum as delta -> 0+
  kInfinityLimit,  ///< m = 0, alpha > 0: infimum as delta -> infinity
};

struct ConstantResult {
  double K = 0.0;
  /// Minimizer for kInterior; 0 or +inf for the limit cases.
  double delta_star = 0.0;
  DeltaLocation location = DeltaLocation::kInterior;
  bool attained = false;
  /// |g(delta_star)| for kInterior, 0 otherwise.
  double stationarity_residual = 0.0;
};

/// f(delta) = delta^{-1/2} prod_{j=0}^{m} (alpha + j/2 + delta)^{1/2},
/// evaluated as exp of half a sum of logs. Throws DomainError for
/// delta <= 0, alpha < 0 or m < 0.
double k_objective(double delta, const DecayQuery& q);

/// g(delta) = sum_{j=0}^{m} delta / (alpha + j/2 + delta) - 1. Its sign is
/// the sign of d/d(delta) log f; strictly increasing in delta.
double k_stationarity(double delta, const DecayQuery& q);

/// K(alpha, m) = inf_{delta > 0} f(delta). Interior root of g found by
/// bisection to 1e-12 relative width; the alpha = 0 and m = 0 cases return
/// their closed-form limits with attained = false.
ConstantResult k_constant(const DecayQuery& q);

const char* to_string(DeltaLocation location) noexcept;

}  // namespace nsdecay
