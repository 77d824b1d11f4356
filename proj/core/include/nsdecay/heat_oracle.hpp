#pragma once

#include <utility>
#include <vector>

#include "nsdecay/norm_series.hpp"

namespace nsdecay {

/// Whole-space initial datum with radial Fourier profile
/// |u0^(xi)| = A |xi|^kappa e^{-|xi|^2 / 2} in R^n, n in 2..4. Under the
/// heat flow e^{nu t Lap} every seminorm has a Gamma-function closed form.
/// Norms use the Plancherel convention ||u||^2 = \int |u^(xi)|^2 d xi and
/// treat u as one scalar magnitude; componentwise sums do not change them.
struct RadialProfile {
  double kappa = 0.0;
  double amplitude = 1.0;
  int dimension = 2;

  /// Throws ConfigError unless kappa >= 0, A > 0 and 2 <= n <= 4.
  void validate() const;
};

struct HeatNormResult {
  double value = 0.0;
  /// s = m + kappa + n/2: the squared norm decays like (1 + 2 nu t)^{-s}.
  double exponent = 0.0;
  /// lim_{t->inf} t^{s/2} ||D^m u(t)||.
  double limit_constant = 0.0;
};

/// Surface area of the unit sphere in R^n, 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

/// ||D^m u(t)||^2 = A^2 w (1/2) Gamma(s) (1 + 2 nu t)^{-s}, s = m + kappa + n/2.
double heat_seminorm(const RadialProfile& p, double nu, double t, int m);
HeatNormResult heat_norm(const RadialProfile& p, double nu, double t, int m);

/// Same quantity by adaptive Gauss-Kronrod quadrature of the radial
/// moment A^2 w \int_0^inf r^{2m + 2 kappa + n - 1} e^{-(1 + 2 nu t) r^2} dr.
double heat_seminorm_quadrature(const RadialProfile& p, double nu, double t, int m);

struct AsymptoticRate {
  /// alpha_m = (kappa + n/2)/2 + m/2.
  double alpha = 0.0;
  /// L_m = lim t^{alpha_m} ||D^m u(t)||.
  double limit = 0.0;
};

AsymptoticRate asymptotic_rate(const RadialProfile& p, double nu, int m);

/// L_m by quadrature of A^2 w \int_0^inf r^{2s-1} e^{-2 nu r^2} dr, the
/// t -> inf limit of the rescaled moment integral.
double asymptotic_limit_quadrature(const RadialProfile& p, double nu, int m);

/// K(alpha, m) nu^{-m/2} L_0 - L_m with alpha = (kappa + n/2)/2. Nonnegative
/// for every profile; a negative value indicates a bug.
double verify_main_inequality(const RadialProfile& p, double nu, int m);

/// Pairs (t, t^{m/2} ||D^m u(t)||) for t = 1e-1, 1e-2, ..., 1e-8.
std::vector<std::pair<double, double>> small_time_limit(const RadialProfile& p, double nu, int m);

struct InterpolationResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  /// Largest relative change of any quadrature-based norm under refinement
  /// (zero for closed-form results).
  double refinement_change = 0.0;
};

/// ||u||_{L4(R^4)} <= ||Du||_{L2(R^4)} on u = e^{-a|x|^2}, closed form:
/// lhs = (pi / (4a))^{1/2}, rhs = pi / sqrt(a).
InterpolationResult verify_interpolation(double a);

/// ||D^j u||_{Lq(R^4)} for u = e^{-a|x|^2}, summing |D_{i1}..D_{ij} u|^q
/// over all index tuples. Each partial derivative factorizes into 1-D
/// Hermite-Gaussian factors whose q-th power integrals are computed by
/// adaptive quadrature with relative tolerance tol.
double gaussian_derivative_norm(double a, int order, int q, double tol = 1e-13);

/// Closed form ||D^j u||_{L2(R^4)} = (pi^2 Gamma(j + 2) (2a)^{j - 2})^{1/2}.
double gaussian_derivative_l2_closed_form(double a, int order);

/// Product estimate ||D^l u||_{L4} ||D^{m-l} u||_{L4} <= ||Du||_{L2} ||D^{m+1} u||_{L2}
/// on u = e^{-a|x|^2} in R^4, all four norms by quadrature. Requires
/// 0 <= ell <= m.
InterpolationResult verify_product_interpolation(double a, int m, int ell);

/// Sample times 0, 1/d, 2/d, ... up to fine_until, then geometric with
/// ratio `growth` up to t_end (t_end always included).
std::vector<double> heat_sample_times(double t_end, double fine_until = 20.0,
                                      double samples_per_unit = 200.0, double growth = 1.001);

/// Closed-form norm series of orders 0..m_max at the given times.
NormSeries heat_series(const RadialProfile& p, double nu, const std::vector<double>& times,
                       int m_max);

}  // namespace nsdecay
