#include "couette/linear/biot_savart.hpp"

#include <algorithm>
#include <cmath>

namespace couette::linear {

Velocity biot_savart(const spectral::SpectralField& omega) {
  const auto& g = omega.grid();
  Velocity v{spectral::SpectralField(omega.grid_ptr(), omega.frame()),
             spectral::SpectralField(omega.grid_ptr(), omega.frame()),
             spectral::SpectralField(omega.grid_ptr(), omega.frame())};
  const int nyq_i = g.nx() / 2, nyq_j = g.ny() / 2;
  for (int i = 0; i < g.nx(); ++i) {
    if (i == nyq_i) continue;
    const double alpha = g.alpha(i);
    for (int j = 0; j < g.ny(); ++j) {
      if (j == nyq_j) continue;
      const Complex w = omega(i, j);
      if (w == Complex{}) continue;
      const double a = omega.effective_eta(i, j);
      const double k2 = alpha * alpha + a * a;
      if (k2 == 0) continue;
      const Complex psi = w / k2;
      v.psi.at(i, j) = psi;
      v.v1.at(i, j) = Complex(0, a) * psi;
      v.v2.at(i, j) = Complex(0, -alpha) * psi;
    }
  }
  return v;
}

double divergence_defect(const Velocity& v) {
  const auto& g = v.v1.grid();
  double worst = 0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const Complex d = Complex(0, g.alpha(i)) * v.v1(i, j) +
                        Complex(0, v.v1.effective_eta(i, j)) * v.v2(i, j);
      worst = std::max(worst, std::abs(d));
    }
  return worst;
}

}  // namespace couette::linear
