#pragma once

#include "couette/spectral/field.hpp"

namespace couette::spectral {

struct ReframeResult {
  SpectralField field;
  // Fraction of sum |c|^2 that no longer fits inside the dealias mask.
  double lost_fraction = 0;
};

// Re-express a field in the sheared frame with a different offset. Slot
// (alpha, eta) of the result holds slot (alpha, eta + alpha (s_old - s_new))
// of the input, which must be a whole number of eta steps for every alpha.
ReframeResult reframe(const SpectralField& f, double new_offset);

}  // namespace couette::spectral
