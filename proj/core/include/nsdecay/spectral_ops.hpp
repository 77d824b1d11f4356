#pragma once

#include <span>
#include <vector>

#include "nsdecay/field.hpp"

namespace nsdecay {

/// Fourier-side Leray projector u -> u - k (k.u) / |k|^2. The k = 0 mode is
/// left untouched.
SpectralField leray_project(const SpectralField& F);
void leray_project_in_place(SpectralField& F) noexcept;

/// Seminorm ||D^m u||_{L2(box)} = (|box| sum_k |k|^{2m} |c_k|^2)^{1/2}.
/// Summing prod_i k_{j_i}^2 over all index tuples (j_1..j_m) gives |k|^{2m},
/// so this is the continuum sum over all m-th partial derivatives.
double seminorm(const SpectralField& F, int m);

/// Seminorms of orders 0..m_max in one pass over the coefficients.
std::vector<double> seminorms(const SpectralField& F, int m_max);

/// max_k |k . c_k|.
double divergence_max(const SpectralField& F) noexcept;

/// max_k |c_{-k} - conj(c_k)| over all components; zero for real fields.
/// Self-conjugate Nyquist modes are skipped.
double hermitian_defect(const SpectralField& F) noexcept;

/// Zero every mode with some |z_i| above the 2/3-rule cutoff.
void dealias_in_place(SpectralField& F) noexcept;

/// Gradient of a scalar given by its coefficients: c_k = i k phi_k.
SpectralField gradient_field(const GridSpec& grid, std::span<const Complex> potential);

}  // namespace nsdecay
