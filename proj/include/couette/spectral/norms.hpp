#pragma once

#include <cmath>

#include "couette/core/error.hpp"
#include "couette/spectral/field.hpp"

namespace couette::spectral {

struct NormBundle {
  double l2 = 0;
  double hlog = 0;        // ||ln(e + |D_x|) f||_{L2}
  double linf = 0;        // grid maximum
  double nonzero_l2 = 0;  // ||f - P_0 f||_{L2}
  double zero_l2 = 0;     // ||P_0 f||_{L2(x,y)}; divide by sqrt(2 pi) for the L2_y norm of the profile
};

NormBundle compute_norms(const SpectralField& field);

inline double log_weight(double alpha) { return std::log(kE + std::abs(alpha)); }

// sqrt(parseval_weight * sum |w(alpha, eta_eff)|^2 |c|^2) with eta_eff the
// physical y-wavenumber in the field's frame.
template <class Weight>
double weighted_l2(const SpectralField& f, Weight&& w) {
  const auto& g = f.grid();
  double acc = 0;
  for (int i = 0; i < g.nx(); ++i) {
    const double a = g.alpha(i);
    for (int j = 0; j < g.ny(); ++j) {
      const double n = std::norm(f(i, j));
      if (n == 0) continue;
      const double wv = w(a, f.effective_eta(i, j));
      acc += wv * wv * n;
    }
  }
  return std::sqrt(acc * g.parseval_weight());
}

double l2_norm(const SpectralField& f);
double hlog_norm(const SpectralField& f);
double linf_norm(const SpectralField& f);
// ||ln(e+|D_x|) grad f||_{L2}, frame aware.
double hlog_gradient_norm(const SpectralField& f);

enum class MixedNorm { l2x_linfy, linf_xy };
double mixed_norm(const SpectralField& f, MixedNorm which);

void require_finite(const SpectralField& f, const char* where);

}  // namespace couette::spectral
