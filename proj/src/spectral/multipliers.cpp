#include "couette/spectral/multipliers.hpp"

#include <cmath>

#include "couette/spectral/norms.hpp"

namespace couette::spectral {

SpectralField apply_x_multiplier(const SpectralField& f, XMultiplier m) {
  require_finite(f, "apply_x_multiplier");
  switch (m) {
    case XMultiplier::log_weight:
      return apply_symbol(f, [](double a, double) { return Complex(log_weight(a)); });
    case XMultiplier::half_derivative:
      return apply_symbol(f, [](double a, double) { return Complex(std::sqrt(std::abs(a))); });
    case XMultiplier::dx:
      return dx(f);
    case XMultiplier::project_nonzero:
      return project_nonzero(f);
    case XMultiplier::project_zero:
      return project_zero(f);
  }
  throw InvalidArgument("unknown x multiplier");
}

SpectralField dx(const SpectralField& f) {
  return apply_symbol(f, [](double a, double) { return Complex(0, a); }, true);
}

SpectralField dy(const SpectralField& f) {
  return apply_symbol(f, [](double, double e) { return Complex(0, e); }, true);
}

SpectralField project_zero(const SpectralField& f) {
  return apply_symbol(f, [](double a, double) { return Complex(a == 0 ? 1.0 : 0.0); });
}

SpectralField project_nonzero(const SpectralField& f) {
  return apply_symbol(f, [](double a, double) { return Complex(a == 0 ? 0.0 : 1.0); });
}

}  // namespace couette::spectral
