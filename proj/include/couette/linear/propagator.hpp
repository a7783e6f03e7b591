#pragma once

#include "couette/spectral/field.hpp"

namespace couette::linear {

using spectral::SpectralField;

struct PropagatorSpec {
  double nu = 0;
  double t_from = 0;
  double t_to = 0;

  double tau() const { return t_to - t_from; }
  void validate() const;
};

// nu (alpha^2 tau + a^2 tau - a alpha tau^2 + alpha^2 tau^3 / 3), the decay
// exponent of a sheared-frame mode whose physical y-wavenumber is a at the
// start of the interval. Additive along the trajectory: E(a, t1 + t2) =
// E(a, t1) + E(a - alpha t1, t2).
double shear_diffusion_exponent(double alpha, double a, double nu, double tau);

// Exact linear evolution. The input frame offset s is advanced to s + tau
// (a stationary input is treated as offset 0), so coefficients only change by
// their damping factor. Rows/columns at the Nyquist index are zeroed: their
// Hermitian partner is not representable.
SpectralField propagate(const SpectralField& field, const PropagatorSpec& spec);

// Same map obtained by classical RK4 on each mode's scalar ODE
// dW/dtau = -nu (alpha^2 + (a - alpha tau)^2) W with the given substeps.
SpectralField propagate_oracle(const SpectralField& field, const PropagatorSpec& spec, int substeps);

// Reject fields with alpha = 0 content above roundoff.
void require_mean_free(const SpectralField& field);

}  // namespace couette::linear
