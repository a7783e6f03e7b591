#pragma once

#include "couette/spectral/field.hpp"

namespace couette::linear {

// Instantaneous norms of the alpha != 0 part of a vorticity field, shared by
// the linear estimates and the trajectory diagnostics. "log" means the
// ln(e + |D_x|) weight; mixed norms are L2 in x and sup in y.
struct InstantFunctionals {
  double hlog = 0;          // ||log w||_L2
  double grad_hlog = 0;     // ||log grad w||_L2
  double dx_hlog = 0;       // ||log dx w||_L2
  double log_linf = 0;      // ||log w||_Linf
  double v2_linf = 0;       // ||V2||_Linf
  double v2_half_log = 0;   // || |D_x|^(1/2) log V2 ||_{L2x Linf y}
  double v2_half = 0;       // || |D_x|^(1/2) V2 ||_{L2x Linf y}
  double dx_v1_hlog = 0;    // ||log dx V1||_L2
  double dx_v1_l2 = 0;      // ||dx V1||_L2
  double v1_linf = 0;       // ||V1||_Linf
};

// Applies P_{!=0} internally, so any vorticity field may be passed.
InstantFunctionals measure_functionals(const spectral::SpectralField& omega);

}  // namespace couette::linear
