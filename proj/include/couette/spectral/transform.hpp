#pragma once

#include <span>
#include <vector>

#include "couette/spectral/field.hpp"

namespace couette::spectral {

// values[i * Ny + j] = f(x_i, y_j) with x_i = 2 pi i / Nx, y_j = -Ly + 2 Ly j / Ny.
SpectralField transform_forward(const GridPtr& grid, std::span<const double> values,
                                Frame frame = {});
std::vector<double> transform_inverse(const SpectralField& field);

// Values of the physical field omega(x_i, y_j) on the stationary grid, for
// any frame: a sheared field is phase-shifted by exp(-i alpha y_j s) per row
// before the x transform. Equals transform_inverse at offset 0.
std::vector<double> physical_values(const SpectralField& field);

// Inverse transform in y only: row i holds the y-profile of the alpha_i mode
// as it is stored (sheared-frame profiles differ from physical ones by a phase).
std::vector<Complex> y_profiles(const SpectralField& field);

// 1D transforms of a function of y alone, same normalization and sign
// convention as the 2D ones.
std::vector<Complex> forward_y(const GridSpec& grid, std::span<const double> values);
std::vector<double> inverse_y(const GridSpec& grid, std::span<const Complex> coeffs);

// In-place conversion between raw DFT output and our coefficient convention
// along y: multiplies entry j of every row by (-1)^j (its own inverse).
void y_origin_phase(std::span<Complex> data, int nx, int ny);

}  // namespace couette::spectral
