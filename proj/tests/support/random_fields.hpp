#pragma once

#include <random>
#include <vector>

#include "couette/spectral/field.hpp"

namespace couette::testing {

// Gaussian coefficients on |alpha| <= amax, |eta label| <= emax, made Hermitian.
inline spectral::SpectralField random_field(const spectral::GridPtr& grid, std::mt19937_64& rng,
                                            int amax, int emax, bool mean_free_x = false) {
  std::normal_distribution<double> n(0.0, 1.0);
  spectral::SpectralField f(grid);
  for (int a = -amax; a <= amax; ++a) {
    if (mean_free_x && a == 0) continue;
    for (int e = -emax; e <= emax; ++e) f.set_mode(a, e, {n(rng), n(rng)});
  }
  f.enforce_hermitian();
  return f;
}

inline std::vector<double> random_values(const spectral::GridSpec& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(grid.size());
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace couette::testing
