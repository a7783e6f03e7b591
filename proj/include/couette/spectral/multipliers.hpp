#pragma once

#include "couette/spectral/field.hpp"

namespace couette::spectral {

enum class XMultiplier { log_weight, half_derivative, dx, project_nonzero, project_zero };

SpectralField apply_x_multiplier(const SpectralField& f, XMultiplier m);

// Multiply slot (alpha, eta_eff) by symbol(alpha, eta_eff). Odd symbols should
// pass zero_nyquist so the unpaired Nyquist rows/columns cannot break reality.
template <class Symbol>
SpectralField apply_symbol(const SpectralField& f, Symbol&& symbol, bool zero_nyquist = false) {
  SpectralField out(f.grid_ptr(), f.frame());
  const auto& g = f.grid();
  const int nyq_i = g.nx() / 2, nyq_j = g.ny() / 2;
  for (int i = 0; i < g.nx(); ++i) {
    const double a = g.alpha(i);
    for (int j = 0; j < g.ny(); ++j) {
      if (zero_nyquist && (i == nyq_i || j == nyq_j)) continue;
      const Complex c = f(i, j);
      if (c == Complex{}) continue;
      out.at(i, j) = symbol(a, f.effective_eta(i, j)) * c;
    }
  }
  return out;
}

SpectralField dx(const SpectralField& f);
// Physical y-derivative, using the frame's effective wavenumber.
SpectralField dy(const SpectralField& f);
SpectralField project_zero(const SpectralField& f);
SpectralField project_nonzero(const SpectralField& f);

}  // namespace couette::spectral
