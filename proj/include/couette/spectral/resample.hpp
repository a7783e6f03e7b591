#pragma once

#include "couette/spectral/field.hpp"

namespace couette::spectral {

// Spectral interpolation/truncation onto another grid with the same Ly.
// Modes representable on both grids are copied; Nyquist modes of the smaller
// grid are dropped so the result stays real.
SpectralField resample(const SpectralField& f, const GridPtr& target);

}  // namespace couette::spectral
