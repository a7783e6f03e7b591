#pragma once

#include <cstdint>
#include <vector>

#include "couette/solver/config.hpp"
#include "couette/spectral/field.hpp"

namespace couette::solver {

struct InitialData {
  spectral::SpectralField omega;  // sheared frame, offset 0 except for some checkpoints
  std::vector<double> v0;         // shear-averaged V1 on the y grid
};

// Deterministic in (spec, grid, seed). The alpha != 0 part is rescaled so the
// total ||omega||_Hlog equals target_hlog_norm; omega's alpha = 0 row is
// -d/dy of the localized part of v0.
InitialData generate_initial_condition(const InitialConditionSpec& spec, const spectral::GridPtr& grid,
                                       std::uint64_t seed, double target_hlog_norm);

// Same, with the target taken from the config (epsilon0 nu^beta by default).
InitialData generate_initial_condition(const SimConfig& config);

// The localized v0 profile: y exp(-y^2 / (2 w^2)) scaled to the given L2_y norm.
std::vector<double> zero_mode_profile(const spectral::GridSpec& grid, double l2_norm, double width);

}  // namespace couette::solver
