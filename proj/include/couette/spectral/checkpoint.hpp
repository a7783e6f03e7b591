#pragma once

#include <filesystem>
#include <iosfwd>

#include "couette/spectral/field.hpp"

namespace couette::spectral {

// Binary layout, all little-endian:
//   "CED1" | u32 Nx | u32 Ny | f64 Ly | u8 frame (0 stationary, 1 sheared)
//   | f64 shear | f64 time | Nx*Ny complex (re, im f64) in storage order.
// Storage order is alpha-index outer, eta-index inner, FFT ordering on both.
struct Checkpoint {
  SpectralField field;
  double time = 0;
};

void write_checkpoint(std::ostream& out, const SpectralField& field, double time);
void write_checkpoint(const std::filesystem::path& path, const SpectralField& field, double time);
Checkpoint read_checkpoint(std::istream& in, double dealias_fraction = 2.0 / 3.0);
Checkpoint read_checkpoint(const std::filesystem::path& path, double dealias_fraction = 2.0 / 3.0);

}  // namespace couette::spectral
