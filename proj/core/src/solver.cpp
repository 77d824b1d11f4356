#include "nsdecay/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nsdecay/errors.hpp"
#include "nsdecay/spectral_ops.hpp"
#include "nsdecay/transform.hpp"

namespace nsdecay {

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(horizon > 0.0)) throw ConfigError("horizon T must be positive");
  if (!(dt < horizon)) throw ConfigError("dt must be smaller than the horizon T");
  if (record_stride < 1) throw ConfigError("record_stride must be >= 1");
  if (m_max < 1) throw ConfigError("m_max must be >= 1");
  if (snapshot_stride < 0) throw ConfigError("snapshot_stride must be >= 0");
  if (!(cfl_limit > 0.0)) throw ConfigError("cfl_limit must be positive");
}

namespace {

// Wavenumber tables and scratch space shared by every nonlinear evaluation
// on one grid.
class NonlinearEvaluator {
 public:
  NonlinearEvaluator(const GridSpec& grid, bool dealias)
      : grid_(grid),
        dealias_(dealias),
        points_(grid.points()),
        deriv_k_(static_cast<std::size_t>(grid.dimension) * points_),
        keep_(points_, 1),
        physical_(static_cast<std::size_t>(grid.dimension), std::vector<double>(points_)),
        work_(points_) {
    const int n = grid.dimension;
    const int half = grid.resolution / 2;
    const int cutoff = grid.dealias_cutoff();
    const double unit = grid.wavenumber_unit();
    for_each_mode(grid, [&](std::size_t flat, const LatticeVector& z) {
      for (int d = 0; d < n; ++d) {
        // The Nyquist derivative has no real-valued counterpart.
        deriv_k_[d * points_ + flat] = z[d] == -half ? 0.0 : unit * z[d];
        if (dealias && std::abs(z[d]) > cutoff) keep_[flat] = 0;
      }
    });
  }

  void evaluate(const SpectralField& u, SpectralField& out) {
    const int n = grid_.dimension;
    for (int c = 0; c < n; ++c) {
      auto src = u.component(c);
      for (std::size_t p = 0; p < points_; ++p) work_[p] = keep_[p] ? src[p] : Complex(0.0);
      fft_backward_in_place(grid_, work_);
      auto& phys = physical_[c];
      for (std::size_t p = 0; p < points_; ++p) phys[p] = work_[p].real();
    }

    for (auto& v : out.data()) v = 0.0;
    const double scale = 1.0 / static_cast<double>(points_);
    const Complex I(0.0, 1.0);
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        const auto& ua = physical_[a];
        const auto& ub = physical_[b];
        for (std::size_t p = 0; p < points_; ++p) work_[p] = Complex(ua[p] * ub[p], 0.0);
        fft_forward_in_place(grid_, work_);
        auto out_a = out.component(a);
        auto out_b = out.component(b);
        const double* kb = deriv_k_.data() + b * points_;
        const double* ka = deriv_k_.data() + a * points_;
        for (std::size_t p = 0; p < points_; ++p) {
          if (!keep_[p]) continue;
          const Complex w = work_[p] * scale;
          out_a[p] -= I * kb[p] * w;
          if (a != b) out_b[p] -= I * ka[p] * w;
        }
      }
    }
    leray_project_in_place(out);
  }

 private:
  GridSpec grid_;
  bool dealias_;
  std::size_t points_;
  std::vector<double> deriv_k_;
  std::vector<char> keep_;
  std::vector<std::vector<double>> physical_;
  std::vector<Complex> work_;
};

// Integrating-factor RK4: the viscous term is integrated exactly through
// e^{-nu |k|^2 t}, the projected convective term by the classical four
// stages in the transformed variable.
class Integrator {
 public:
  Integrator(const GridSpec& grid, double dt, bool dealias, bool nonlinear)
      : dt_(dt),
        nonlinear_(nonlinear),
        evaluator_(grid, dealias),
        full_(grid.points()),
        half_(grid.points()),
        a_(grid),
        b_(grid),
        c_(grid),
        d_(grid),
        stage_(grid) {
    const double unit = grid.wavenumber_unit();
    for_each_mode(grid, [&](std::size_t flat, const LatticeVector& z) {
      double k2 = 0.0;
      for (int d = 0; d < grid.dimension; ++d) k2 += (unit * z[d]) * (unit * z[d]);
      full_[flat] = std::exp(-grid.viscosity * k2 * dt);
      half_[flat] = std::exp(-0.5 * grid.viscosity * k2 * dt);
    });
  }

  void advance(SpectralField& u) {
    const int n = u.components();
    const std::size_t P = u.modes();
    if (!nonlinear_) {
      for (int c = 0; c < n; ++c) {
        auto uc = u.component(c);
        for (std::size_t p = 0; p < P; ++p) uc[p] *= full_[p];
      }
      return;
    }
    const double h = dt_;
    evaluator_.evaluate(u, a_);
    for (int c = 0; c < n; ++c) {
      auto uc = u.component(c);
      auto ac = a_.component(c);
      auto sc = stage_.component(c);
      for (std::size_t p = 0; p < P; ++p) sc[p] = half_[p] * (uc[p] + 0.5 * h * ac[p]);
    }
    evaluator_.evaluate(stage_, b_);
    for (int c = 0; c < n; ++c) {
      auto uc = u.component(c);
      auto bc = b_.component(c);
      auto sc = stage_.component(c);
      for (std::size_t p = 0; p < P; ++p) sc[p] = half_[p] * uc[p] + 0.5 * h * bc[p];
    }
    evaluator_.evaluate(stage_, c_);
    for (int c = 0; c < n; ++c) {
      auto uc = u.component(c);
      auto cc = c_.component(c);
      auto sc = stage_.component(c);
      for (std::size_t p = 0; p < P; ++p) sc[p] = full_[p] * uc[p] + h * half_[p] * cc[p];
    }
    evaluator_.evaluate(stage_, d_);
    for (int c = 0; c < n; ++c) {
      auto uc = u.component(c);
      auto ac = a_.component(c);
      auto bc = b_.component(c);
      auto cc = c_.component(c);
      auto dc = d_.component(c);
      for (std::size_t p = 0; p < P; ++p) {
        uc[p] = full_[p] * uc[p] +
                (h / 6.0) * (full_[p] * ac[p] + 2.0 * half_[p] * (bc[p] + cc[p]) + dc[p]);
      }
    }
  }

 private:
  double dt_;
  bool nonlinear_;
  NonlinearEvaluator evaluator_;
  std::vector<double> full_;
  std::vector<double> half_;
  SpectralField a_, b_, c_, d_, stage_;
};

bool all_finite(const SpectralField& u) {
  for (const auto& v : u.data()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

[[noreturn]] void blow_up(double t) {
  std::ostringstream msg;
  msg << "solution blew up (non-finite coefficients) at t = " << t;
  throw BlowUpError(t, msg.str());
}

double max_wavenumber(const GridSpec& grid) {
  return grid.wavenumber_unit() * (grid.resolution / 2) * std::sqrt(static_cast<double>(grid.dimension));
}

void check_initial_state(const SpectralField& u0) {
  u0.grid().validate();
  const double tol = 1e-12 * max_wavenumber(u0.grid()) * std::max(1.0, u0.max_abs());
  if (divergence_max(u0) > tol) throw ConfigError("initial data is not solenoidal");
  for (int c = 0; c < u0.components(); ++c) {
    if (std::abs(u0.at(c, 0)) > 1e-14 * std::max(1.0, u0.max_abs())) {
      throw ConfigError("initial data must have zero mean");
    }
  }
}

}  // namespace

SpectralField nonlinear_term(const SpectralField& u, bool dealias) {
  NonlinearEvaluator evaluator(u.grid(), dealias);
  SpectralField out(u.grid());
  evaluator.evaluate(u, out);
  return out;
}

double advective_dt_limit(const SpectralField& u, double cfl_limit) {
  const double umax = inverse_transform(u).max_magnitude();
  if (umax == 0.0) return std::numeric_limits<double>::infinity();
  return cfl_limit * u.grid().spacing() / umax;
}

StateSnapshot step(const StateSnapshot& s, const SolverConfig& cfg) {
  cfg.validate();
  Integrator integrator(s.field.grid(), cfg.dt, cfg.dealias, cfg.nonlinear);
  StateSnapshot next{s.time + cfg.dt, s.field};
  integrator.advance(next.field);
  if (!all_finite(next.field)) blow_up(next.time);
  return next;
}

SimulationResult simulate(const SpectralField& u0, const SolverConfig& cfg) {
  cfg.validate();
  check_initial_state(u0);

  if (cfg.nonlinear) {
    const double limit = advective_dt_limit(u0, cfg.cfl_limit);
    if (cfg.dt > limit) {
      std::ostringstream msg;
      msg << "dt = " << cfg.dt << " violates the advective bound dt <= " << limit;
      throw ConfigError(msg.str());
    }
  }

  const GridSpec& grid = u0.grid();
  const auto full_steps = static_cast<long long>(std::floor(cfg.horizon / cfg.dt + 1e-9));
  const double remainder = cfg.horizon - static_cast<double>(full_steps) * cfg.dt;
  const bool partial = remainder > 1e-12 * cfg.horizon;
  const long long total_steps = full_steps + (partial ? 1 : 0);

  SimulationResult result;
  result.series.grid = grid;
  SpectralField u = u0;
  bool warned = false;

  auto record = [&](double t) {
    result.series.append(t, seminorms(u, cfg.m_max));
    result.divergence.push_back(divergence_max(u));
    if (cfg.nonlinear && !warned && t > 0.0) {
      const double limit = advective_dt_limit(u, cfg.cfl_limit);
      if (cfg.dt > limit) {
        std::ostringstream msg;
        msg << "advective bound violated at t = " << t << " (dt = " << cfg.dt << ", limit "
            << limit << ")";
        result.warnings.push_back(msg.str());
        warned = true;
      }
    }
  };

  record(0.0);
  if (cfg.snapshot_stride > 0) result.snapshots.push_back({0.0, u});

  Integrator integrator(grid, cfg.dt, cfg.dealias, cfg.nonlinear);
  for (long long s = 1; s <= full_steps; ++s) {
    integrator.advance(u);
    const double t = (s == total_steps) ? cfg.horizon : static_cast<double>(s) * cfg.dt;
    if (!all_finite(u)) blow_up(t);
    if (s % cfg.record_stride == 0 || s == total_steps) record(t);
    if (cfg.snapshot_stride > 0 && s % cfg.snapshot_stride == 0) result.snapshots.push_back({t, u});
  }
  if (partial) {
    Integrator last(grid, remainder, cfg.dealias, cfg.nonlinear);
    last.advance(u);
    if (!all_finite(u)) blow_up(cfg.horizon);
    record(cfg.horizon);
    if (cfg.snapshot_stride > 0) result.snapshots.push_back({cfg.horizon, u});
  }
  result.final_state = {cfg.horizon, std::move(u)};
  return result;
}

}  // namespace nsdecay
