#include "nsdecay/heat_oracle.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

#include "nsdecay/decay_constants.hpp"
#include "nsdecay/errors.hpp"

namespace nsdecay {
namespace {

constexpr double kPi = std::numbers::pi;

void check_rate_args(double nu, int m) {
  if (!(nu > 0.0)) throw DomainError("viscosity must be positive");
  if (m < 0) throw DomainError("derivative order must be >= 0");
}

double moment_exponent(const RadialProfile& p, int m) {
  return m + p.kappa + 0.5 * p.dimension;
}

// \int_0^inf r^power e^{-c r^2} dr. The integrand is negligible beyond
// c r^2 = power + 120, so the finite range carries the whole mass.
template <unsigned Points>
double gaussian_moment_quadrature(double power, double c, double tol) {
  // r = rho / sqrt(c) moves the peak to rho ~ sqrt(power / 2) for every c.
  const double upper = std::sqrt(power + 120.0);
  auto f = [&](double rho) { return std::pow(rho, power) * std::exp(-rho * rho); };
  const double scaled =
      boost::math::quadrature::gauss_kronrod<double, Points>::integrate(f, 0.0, upper, 15, tol);
  return scaled * std::pow(c, -0.5 * (power + 1.0));
}

}  // namespace

void RadialProfile::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ConfigError("kappa must be >= 0");
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw ConfigError("amplitude must be > 0");
  if (dimension < 2 || dimension > 4) {
    throw ConfigError("profile dimension must be 2, 3 or 4, got " + std::to_string(dimension));
  }
}

double unit_sphere_area(int n) {
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double heat_seminorm(const RadialProfile& p, double nu, double t, int m) {
  p.validate();
  check_rate_args(nu, m);
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
  const double s = moment_exponent(p, m);
  // Logs keep (1 + 2 nu t)^{-s} finite for large s and t.
  const double log_sq = 2.0 * std::log(p.amplitude) + std::log(unit_sphere_area(p.dimension)) -
                        std::log(2.0) + std::lgamma(s) - s * std::log1p(2.0 * nu * t);
  return std::exp(0.5 * log_sq);
}

HeatNormResult heat_norm(const RadialProfile& p, double nu, double t, int m) {
  return {heat_seminorm(p, nu, t, m), moment_exponent(p, m), asymptotic_rate(p, nu, m).limit};
}

double heat_seminorm_quadrature(const RadialProfile& p, double nu, double t, int m) {
  p.validate();
  check_rate_args(nu, m);
  const double power = 2.0 * m + 2.0 * p.kappa + p.dimension - 1.0;
  const double c = 1.0 + 2.0 * nu * t;
  const double moment = gaussian_moment_quadrature<61>(power, c, 1e-14);
  return p.amplitude * std::sqrt(unit_sphere_area(p.dimension) * moment);
}

AsymptoticRate asymptotic_rate(const RadialProfile& p, double nu, int m) {
  p.validate();
  check_rate_args(nu, m);
  const double s = moment_exponent(p, m);
  const double limit = p.amplitude *
                       std::sqrt(0.5 * unit_sphere_area(p.dimension) * std::tgamma(s)) *
                       std::pow(2.0 * nu, -0.5 * s);
  return {0.5 * s, limit};
}

double asymptotic_limit_quadrature(const RadialProfile& p, double nu, int m) {
  p.validate();
  check_rate_args(nu, m);
  const double s = moment_exponent(p, m);
  const double moment = gaussian_moment_quadrature<61>(2.0 * s - 1.0, 2.0 * nu, 1e-14);
  return p.amplitude * std::sqrt(unit_sphere_area(p.dimension) * moment);
}

double verify_main_inequality(const RadialProfile& p, double nu, int m) {
  if (m < 1) throw DomainError("main inequality needs m >= 1");
  const double alpha = 0.5 * (p.kappa + 0.5 * p.dimension);
  const double K = k_constant({alpha, m}).K;
  const double L0 = asymptotic_rate(p, nu, 0).limit;
  const double Lm = asymptotic_rate(p, nu, m).limit;
  return K * std::pow(nu, -0.5 * m) * L0 - Lm;
}

std::vector<std::pair<double, double>> small_time_limit(const RadialProfile& p, double nu, int m) {
  if (m < 1) throw DomainError("small-time limit needs m >= 1");
  std::vector<std::pair<double, double>> out;
  for (int e = 1; e <= 8; ++e) {
    const double t = std::pow(10.0, -e);
    out.emplace_back(t, std::pow(t, 0.5 * m) * heat_seminorm(p, nu, t, m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gaussian test functions in R^4.

InterpolationResult verify_interpolation(double a) {
  if (!(a > 0.0)) throw DomainError("Gaussian width parameter must be positive");
  InterpolationResult r;
  r.lhs = std::sqrt(kPi / (4.0 * a));
  r.rhs = kPi / std::sqrt(a);
  r.margin = r.rhs - r.lhs;
  return r;
}

namespace {

// d^b/dx^b e^{-a x^2} = (-sqrt a)^b H_b(sqrt a x) e^{-a x^2}, physicists' Hermite.
double hermite(int b, double y) {
  if (b == 0) return 1.0;
  double h0 = 1.0;
  double h1 = 2.0 * y;
  for (int k = 1; k < b; ++k) {
    const double h2 = 2.0 * y * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

template <unsigned Points>
double hermite_gaussian_power_integral(double a, int b, int q, double tol) {
  const double sa = std::sqrt(a);
  const double scale = std::pow(sa, b);
  auto f = [&](double x) {
    const double v = scale * hermite(b, sa * x) * std::exp(-a * x * x);
    return std::pow(std::abs(v), q);
  };
  const double upper = (9.0 + std::sqrt(static_cast<double>(b))) / std::sqrt(q * a);
  // |h_b|^q is even in x.
  return 2.0 * boost::math::quadrature::gauss_kronrod<double, Points>::integrate(f, 0.0, upper, 15,
                                                                                  tol);
}

template <unsigned Points>
double derivative_norm_impl(double a, int order, int q, double tol) {
  constexpr int kDim = 4;
  std::vector<double> factor(static_cast<std::size_t>(order) + 1);
  for (int b = 0; b <= order; ++b) factor[b] = hermite_gaussian_power_integral<Points>(a, b, q, tol);

  // Sum over multi-indices beta with |beta| = order, each weighted by the
  // number of ordered index tuples producing it.
  double total = 0.0;
  std::vector<int> beta(kDim, 0);
  auto recurse = [&](auto&& self, int axis, int remaining) -> void {
    if (axis == kDim - 1) {
      beta[axis] = remaining;
      double log_multinomial = std::lgamma(order + 1.0);
      double product = 1.0;
      for (int i = 0; i < kDim; ++i) {
        log_multinomial -= std::lgamma(beta[i] + 1.0);
        product *= factor[beta[i]];
      }
      total += std::exp(log_multinomial) * product;
      return;
    }
    for (int b = 0; b <= remaining; ++b) {
      beta[axis] = b;
      self(self, axis + 1, remaining - b);
    }
  };
  recurse(recurse, 0, order);
  return std::pow(total, 1.0 / q);
}

}  // namespace

double gaussian_derivative_norm(double a, int order, int q, double tol) {
  if (!(a > 0.0)) throw DomainError("Gaussian width parameter must be positive");
  if (order < 0) throw DomainError("derivative order must be >= 0");
  if (q < 1) throw DomainError("Lebesgue exponent must be >= 1");
  return derivative_norm_impl<61>(a, order, q, tol);
}

double gaussian_derivative_l2_closed_form(double a, int order) {
  if (!(a > 0.0)) throw DomainError("Gaussian width parameter must be positive");
  return std::sqrt(kPi * kPi * std::tgamma(order + 2.0) * std::pow(2.0 * a, order - 2.0));
}

InterpolationResult verify_product_interpolation(double a, int m, int ell) {
  if (!(a > 0.0)) throw DomainError("Gaussian width parameter must be positive");
  if (m < 0 || ell < 0 || ell > m) throw DomainError("need 0 <= ell <= m");

  auto evaluate = [&](auto coarse_tag) {
    constexpr unsigned P = decltype(coarse_tag)::value;
    const double tol = P == 31 ? 1e-8 : 1e-14;
    const double l4a = derivative_norm_impl<P>(a, ell, 4, tol);
    const double l4b = derivative_norm_impl<P>(a, m - ell, 4, tol);
    const double l2a = derivative_norm_impl<P>(a, 1, 2, tol);
    const double l2b = derivative_norm_impl<P>(a, m + 1, 2, tol);
    return std::array<double, 4>{l4a, l4b, l2a, l2b};
  };
  const auto coarse = evaluate(std::integral_constant<unsigned, 31>{});
  const auto fine = evaluate(std::integral_constant<unsigned, 61>{});

  InterpolationResult r;
  r.lhs = fine[0] * fine[1];
  r.rhs = fine[2] * fine[3];
  r.margin = r.rhs - r.lhs;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    r.refinement_change = std::max(r.refinement_change, std::abs(fine[i] - coarse[i]) / fine[i]);
  }
  return r;
}

// ---------------------------------------------------------------------------

std::vector<double> heat_sample_times(double t_end, double fine_until, double samples_per_unit,
                                      double growth) {
  if (!(t_end > 0.0) || !(samples_per_unit > 0.0) || !(growth > 1.0)) {
    throw ConfigError("invalid heat sample-time parameters");
  }
  std::vector<double> times;
  const double fine_end = std::min(fine_until, t_end);
  const auto fine_count = static_cast<long long>(std::floor(fine_end * samples_per_unit + 1e-9));
  for (long long i = 0; i <= fine_count; ++i) times.push_back(static_cast<double>(i) / samples_per_unit);
  double t = times.back();
  while (t > 0.0 && t * growth < t_end) {
    t *= growth;
    times.push_back(t);
  }
  if (times.back() < t_end) times.push_back(t_end);
  return times;
}

NormSeries heat_series(const RadialProfile& p, double nu, const std::vector<double>& times,
                       int m_max) {
  p.validate();
  check_rate_args(nu, m_max);
  NormSeries series;
  for (double t : times) {
    std::vector<double> row(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) row[m] = heat_seminorm(p, nu, t, m);
    series.append(t, std::move(row));
  }
  return series;
}

}  // namespace nsdecay
