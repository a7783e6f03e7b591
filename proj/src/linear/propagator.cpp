#include "couette/linear/propagator.hpp"

#include <cmath>

#include "couette/core/error.hpp"
#include "couette/spectral/norms.hpp"

namespace couette::linear {

void PropagatorSpec::validate() const {
  require(std::isfinite(nu) && nu >= 0, "propagator: nu must be non-negative");
  require(std::isfinite(t_from) && t_from >= 0, "propagator: t_from must be >= 0");
  require(std::isfinite(t_to) && t_to >= t_from, "propagator: t_to must be >= t_from");
}

double shear_diffusion_exponent(double alpha, double a, double nu, double tau) {
  const double a2 = alpha * alpha;
  return nu * (a2 * tau + a * a * tau - a * alpha * tau * tau + a2 * tau * tau * tau / 3.0);
}

void require_mean_free(const SpectralField& field) {
  spectral::require_finite(field, "propagate");
  const auto& g = field.grid();
  double zero = 0, total = 0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double n = std::norm(field(i, j));
      total += n;
      if (g.alpha_label(i) == 0) zero += n;
    }
  if (zero > 1e-24 * total && zero > 0)
    throw InvalidArgument("propagate: field has x-mean (alpha = 0) content");
}

namespace {

template <class Factor>
SpectralField apply_factor(const SpectralField& field, const PropagatorSpec& spec, Factor&& factor) {
  spec.validate();
  require_mean_free(field);
  const auto& g = field.grid();
  const double s = field.frame().offset();
  SpectralField out(field.grid_ptr(), spectral::Frame::sheared(s + spec.tau()));
  const int nyq_i = g.nx() / 2, nyq_j = g.ny() / 2;
  for (int i = 0; i < g.nx(); ++i) {
    if (i == nyq_i) continue;
    const double alpha = g.alpha(i);
    for (int j = 0; j < g.ny(); ++j) {
      if (j == nyq_j) continue;
      const Complex c = field(i, j);
      if (c == Complex{}) continue;
      out.at(i, j) = factor(alpha, field.effective_eta(i, j)) * c;
    }
  }
  return out;
}

}  // namespace

SpectralField propagate(const SpectralField& field, const PropagatorSpec& spec) {
  const double tau = spec.tau();
  return apply_factor(field, spec, [&](double alpha, double a) {
    return std::exp(-shear_diffusion_exponent(alpha, a, spec.nu, tau));
  });
}

SpectralField propagate_oracle(const SpectralField& field, const PropagatorSpec& spec, int substeps) {
  require(substeps >= 1, "propagate_oracle: substeps must be >= 1");
  const double h = spec.tau() / substeps;
  return apply_factor(field, spec, [&](double alpha, double a) {
    auto rate = [&](double t) {
      const double e = a - alpha * t;
      return -spec.nu * (alpha * alpha + e * e);
    };
    double w = 1.0;
    for (int n = 0; n < substeps; ++n) {
      const double t = n * h;
      const double r0 = rate(t), rh = rate(t + 0.5 * h), r1 = rate(t + h);
      const double k1 = r0 * w;
      const double k2 = rh * (w + 0.5 * h * k1);
      const double k3 = rh * (w + 0.5 * h * k2);
      const double k4 = r1 * (w + h * k3);
      w += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return w;
  });
}

}  // namespace couette::linear
