#pragma once

#include "couette/spectral/field.hpp"

namespace couette::linear {

struct Velocity {
  spectral::SpectralField v1;
  spectral::SpectralField v2;
  spectral::SpectralField psi;
};

// psi = omega / (alpha^2 + a^2), V1 = i a psi, V2 = -i alpha psi, with a the
// physical y-wavenumber in omega's frame. The (0,0) mode is gauged to zero.
// Only alpha != 0 or eta != 0 content matters; alpha = 0 gives V2 = 0.
Velocity biot_savart(const spectral::SpectralField& omega);

// max over modes of |i alpha V1 + i a V2|.
double divergence_defect(const Velocity& v);

}  // namespace couette::linear
