#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "couette/core/types.hpp"
#include "couette/spectral/grid.hpp"

namespace couette::solver {

enum class IcKind { random_band, single_mode, from_checkpoint };
enum class CflPolicy { reduce, abort };

struct InitialConditionSpec {
  IcKind kind = IcKind::random_band;
  // random_band: Gaussian coefficients on alpha_min <= |alpha| <= alpha_max,
  // |eta| <= eta_max (physical wavenumber), then multiplied by a Gaussian
  // y-envelope of width envelope_width (0 disables it).
  int alpha_min = 1;
  int alpha_max = 2;
  double eta_max = 1.0;
  double envelope_width = 1.0;
  // single_mode: cos(alpha x) cos(eta y).
  int mode_alpha = 1;
  double mode_eta = 1.0;
  std::string checkpoint_path;
  // ||omega_in||_Hlog; unset means epsilon0 * nu^beta.
  std::optional<double> target_hlog_norm;
  // L2_y norm of the localized part of the shear-averaged V1, and its mean.
  double zero_mode_amplitude = 0.0;
  double zero_mode_width = 1.0;
  double galilean_mean = 0.0;
};

struct SimConfig {
  double nu = 1e-3;
  double beta = 0.5;
  double epsilon0 = 1e-2;
  InitialConditionSpec ic;
  double dt = 0.05;
  double t_final = 10.0;
  double remap_interval = 1.0;  // values >= t_final disable remapping
  int nx = 64;
  int ny = 64;
  double ly = 2 * kPi;
  double dealias_fraction = 2.0 / 3.0;
  std::uint64_t seed = 1;

  bool nonlinear = true;
  bool allow_zero_nu = false;  // only for conservation self-tests
  double remap_loss_bound = 1e-10;
  double cfl_max = 0.5;
  CflPolicy cfl_policy = CflPolicy::reduce;
  double record_interval = 0.0;  // 0 means every step
  double boundary_fraction_limit = 1e-6;
  bool boundary_monitor = true;
  bool probe_nonlinear_terms = false;

  double target_norm() const;
  spectral::GridPtr make_grid() const;
  double effective_record_interval() const { return record_interval > 0 ? record_interval : dt; }
  bool remapping() const { return remap_interval < t_final; }
  void validate() const;
};

nlohmann::json to_json(const SimConfig& c);
SimConfig sim_config_from_json(const nlohmann::json& j);
// FNV-1a 64 of the canonical JSON form, as 16 hex digits.
std::string config_hash(const SimConfig& c);

std::string to_string(IcKind k);
IcKind ic_kind_from_string(const std::string& s);

}  // namespace couette::solver
