#include "couette/spectral/resample.hpp"

#include <algorithm>
#include <cstdlib>

#include "couette/core/error.hpp"

namespace couette::spectral {

SpectralField resample(const SpectralField& f, const GridPtr& target) {
  const auto& src = f.grid();
  require(src.ly() == target->ly(), "resample: Ly must match");
  SpectralField out(target, f.frame());
  const int amax = std::min(src.nx(), target->nx()) / 2 - 1;
  const int emax = std::min(src.ny(), target->ny()) / 2 - 1;
  for (int a = -amax; a <= amax; ++a)
    for (int e = -emax; e <= emax; ++e) out.set_mode(a, e, f.mode(a, e));
  return out;
}

}  // namespace couette::spectral
