#pragma once

#include <span>

#include "nsdecay/field.hpp"

namespace nsdecay {

/// Physical samples to Fourier-series coefficients (divides by N^n).
SpectralField forward_transform(const PhysicalField& f);

/// Fourier-series coefficients to physical samples (real part kept).
PhysicalField inverse_transform(const SpectralField& F);

/// Unnormalized in-place n-dimensional DFTs of one scalar array laid out on
/// the grid. Forward uses e^{-ik.x}, backward e^{+ik.x}. Safe to call
/// concurrently on distinct arrays.
void fft_forward_in_place(const GridSpec& grid, std::span<Complex> values);
void fft_backward_in_place(const GridSpec& grid, std::span<Complex> values);

}  // namespace nsdecay
