#include "couette/linear/functionals.hpp"

#include <cmath>

#include "couette/linear/biot_savart.hpp"
#include "couette/spectral/multipliers.hpp"
#include "couette/spectral/norms.hpp"

namespace couette::linear {

using namespace spectral;

InstantFunctionals measure_functionals(const SpectralField& omega) {
  const SpectralField w = project_nonzero(omega);
  const Velocity v = biot_savart(w);
  auto lw = [](double a, double) { return log_weight(a); };
  auto lw_dx = [](double a, double) { return log_weight(a) * std::abs(a); };
  auto as_complex = [](auto fn) {
    return [fn](double a, double e) { return Complex(fn(a, e)); };
  };

  InstantFunctionals f;
  f.hlog = weighted_l2(w, lw);
  f.grad_hlog = hlog_gradient_norm(w);
  f.dx_hlog = weighted_l2(w, lw_dx);
  f.log_linf = linf_norm(apply_symbol(w, as_complex(lw)));
  f.v2_linf = linf_norm(v.v2);
  f.v2_half_log = mixed_norm(
      apply_symbol(v.v2, as_complex([](double a, double) { return std::sqrt(std::abs(a)) * log_weight(a); })),
      MixedNorm::l2x_linfy);
  f.v2_half = mixed_norm(apply_x_multiplier(v.v2, XMultiplier::half_derivative), MixedNorm::l2x_linfy);
  f.dx_v1_hlog = weighted_l2(v.v1, lw_dx);
  f.dx_v1_l2 = weighted_l2(v.v1, [](double a, double) { return std::abs(a); });
  f.v1_linf = linf_norm(v.v1);
  return f;
}

}  // namespace couette::linear
