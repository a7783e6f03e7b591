#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "couette/linear/functionals.hpp"
#include "couette/spectral/field.hpp"

namespace couette::diagnostics {

// Hlog norms of the three pieces of the nonzero-mode nonlinearity:
// N1 = (V_!= . grad w_!=)_!=, N2 = V1_0 dx w_!=, N3 = V2_!= dy w_0.
struct NTermNorms {
  double n1 = 0, n2 = 0, n3 = 0;
};

struct DiagnosticSample {
  double time = 0;
  long step = 0;
  double dt = 0;
  double l2 = 0;       // ||w||_L2 of the full field
  double hlog = 0;     // ||log w||_L2 of the full field
  double zero_l2 = 0;  // ||w_0||_{L2(x,y)}
  double grad_l2 = 0;  // ||grad w||_L2
  double v_l2 = 0;     // ||V||_L2 without the bulk (Galilean) mean
  double v0_l2 = 0;    // ||V1_0 - mean||_{L2_y}
  double v0_mean = 0;
  linear::InstantFunctionals nonzero;  // functionals of w_!=; nonzero.hlog is ||log w_!=||
  double boundary_fraction = 0;
  double remap_loss = 0;  // cumulative
  std::optional<NTermNorms> nterms;
};

struct DiagnosticsRecord {
  double nu = 0;
  std::vector<DiagnosticSample> samples;

  std::vector<double> times() const;
  std::vector<double> nonzero_hlog() const;
};

DiagnosticSample sample_state(double time, long step, double dt, const spectral::SpectralField& omega,
                              std::span<const double> v0, bool probe_nterms);

NTermNorms nonlinear_term_hlog(const spectral::SpectralField& omega, std::span<const double> v0);

// L1-in-time of each Hlog norm over [t0, t1]; throws InvalidArgument when a
// sample in the window was recorded without the probes.
NTermNorms nonlinear_term_norms(const DiagnosticsRecord& record, double t0, double t1);

// One row per sample, fixed 17-digit formatting so identical runs give
// identical bytes. The N-term columns are empty when not probed.
void write_diagnostics_csv(std::ostream& out, const DiagnosticsRecord& record);

}  // namespace couette::diagnostics
