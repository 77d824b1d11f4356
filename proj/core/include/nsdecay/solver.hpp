#pragma once

#include <string>
#include <vector>

#include "nsdecay/field.hpp"
#include "nsdecay/norm_series.hpp"

namespace nsdecay {

struct SolverConfig {
  double dt = 1e-3;
  double horizon = 1.0;
  bool dealias = true;
  /// false drops the convective term, leaving exact heat decay per mode.
  bool nonlinear = true;
  int record_stride = 1;
  /// Highest seminorm order recorded in the series.
  int m_max = 1;
  /// Keep a snapshot every this many steps (0 = none).
  int snapshot_stride = 0;
  /// Advective limit dt <= cfl_limit * dx / max|u|.
  double cfl_limit = 0.5;

  void validate() const;
};

struct StateSnapshot {
  double time = 0.0;
  SpectralField field;
};

struct SimulationResult {
  NormSeries series;
  /// divergence_max at each recorded sample.
  std::vector<double> divergence;
  std::vector<StateSnapshot> snapshots;
  std::vector<std::string> warnings;
  StateSnapshot final_state;
};

/// Leray-projected spectral form of -(u.grad)u, computed pseudo-spectrally
/// in divergence form -div(u (x) u). With dealias the inputs and the result
/// are truncated by the 2/3 rule.
SpectralField nonlinear_term(const SpectralField& u, bool dealias = true);

/// Largest time step allowed by the advective bound for this state.
double advective_dt_limit(const SpectralField& u, double cfl_limit);

/// One integrating-factor RK4 step of size cfg.dt. Throws BlowUpError if the
/// coefficients become non-finite.
StateSnapshot step(const StateSnapshot& s, const SolverConfig& cfg);

/// Integrate from t = 0 to cfg.horizon, recording seminorms every
/// record_stride steps and at the final time. A final partial step is
/// taken when the horizon is not a multiple of dt.
SimulationResult simulate(const SpectralField& u0, const SolverConfig& cfg);

}  // namespace nsdecay
