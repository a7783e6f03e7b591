#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "couette/linear/functionals.hpp"
#include "couette/spectral/field.hpp"

namespace couette::solver {

// Running time integrals, advanced by the trapezoid rule every step.
struct Accumulators {
  double grad_sq = 0;          // int ||grad w||^2 (full field), the enstrophy dissipation
  double grad_hlog_sq = 0;     // int ||log grad w_!=||^2
  double dx_hlog = 0;          // int ||log dx w_!=||
  double log_linf_sq = 0;      // int ||log w_!=||_Linf^2
  double v2_linf_sq = 0;       // int ||V2||_Linf^2
  double v2_half_log_sq = 0;   // int || |D_x|^(1/2) log V2 ||^2_{L2 Linf}
  double v2_half_sq = 0;       // int || |D_x|^(1/2) V2 ||^2_{L2 Linf}
  double dx_v1_hlog_sq = 0;    // int ||log dx V1||^2
  double dx_v1_sq = 0;         // int ||dx V1||^2
  double remap_loss = 0;       // summed enstrophy fraction dropped by remaps
};

struct TrajectoryState {
  double time = 0;
  // Sheared frame; the offset is time minus the time of the last remap.
  spectral::SpectralField omega;
  // Shear-averaged V1 on the y collocation points.
  std::vector<double> v0;
  long step_count = 0;
  double dt = 0;  // current step size, may drop below the configured one
  Accumulators acc;
  // Integrands at the current time, kept for the trapezoid update.
  linear::InstantFunctionals functionals;
  double grad_sq = 0;
};

nlohmann::json to_json(const Accumulators& a);
Accumulators accumulators_from_json(const nlohmann::json& j);

// Binary field checkpoint plus a JSON sidecar next to it (same stem, .json)
// carrying the config hash, time, step, accumulators and v0.
struct StateCheckpoint {
  spectral::SpectralField omega;
  double time = 0;
  long step_count = 0;
  double dt = 0;
  std::string config_hash;
  Accumulators acc;
  std::vector<double> v0;  // empty when the sidecar is missing
};

std::filesystem::path sidecar_path(const std::filesystem::path& checkpoint);
void write_state_checkpoint(const std::filesystem::path& path, const TrajectoryState& state,
                            const std::string& config_hash);
StateCheckpoint read_state_checkpoint(const std::filesystem::path& path, double dealias_fraction = 2.0 / 3.0);

}  // namespace couette::solver
