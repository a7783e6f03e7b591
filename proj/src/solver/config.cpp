#include "couette/solver/config.hpp"

#include <cmath>

#include "couette/core/error.hpp"
#include "couette/core/hash.hpp"
#include "couette/core/types.hpp"

namespace couette::solver {

using nlohmann::json;

std::string to_string(IcKind k) {
  switch (k) {
    case IcKind::random_band: return "random_band";
    case IcKind::single_mode: return "single_mode";
    case IcKind::from_checkpoint: return "from_checkpoint";
  }
  return "unknown";
}

IcKind ic_kind_from_string(const std::string& s) {
  if (s == "random_band") return IcKind::random_band;
  if (s == "single_mode") return IcKind::single_mode;
  if (s == "from_checkpoint") return IcKind::from_checkpoint;
  throw InvalidArgument("unknown initial condition kind: " + s);
}

double SimConfig::target_norm() const {
  return ic.target_hlog_norm ? *ic.target_hlog_norm : epsilon0 * std::pow(nu, beta);
}

spectral::GridPtr SimConfig::make_grid() const {
  return spectral::make_grid(nx, ny, ly, dealias_fraction);
}

namespace {

bool is_multiple(double big, double small) {
  const double q = big / small;
  return std::abs(q - std::round(q)) < 1e-9 * std::max(1.0, q);
}

}  // namespace

void SimConfig::validate() const {
  if (allow_zero_nu)
    require(nu >= 0 && nu < 1, "nu must lie in [0,1) for conservation runs");
  else
    require(nu > 0 && nu < 1, "nu must lie in (0,1)");
  require(beta >= 0, "beta must be >= 0");
  require(epsilon0 > 0, "epsilon0 must be > 0");
  require(dt > 0 && std::isfinite(dt), "dt must be > 0");
  require(t_final >= 0 && std::isfinite(t_final), "t_final must be >= 0");
  require(remap_interval > 0, "remap_interval must be > 0");
  require(cfl_max > 0, "cfl_max must be > 0");
  require(remap_loss_bound >= 0, "remap_loss_bound must be >= 0");
  require(record_interval >= 0, "record_interval must be >= 0");
  auto grid = make_grid();  // validates dimensions
  if (remapping()) {
    require(is_multiple(remap_interval, dt), "remap_interval must be a multiple of dt");
    require(is_multiple(remap_interval * ly / kPi, 1.0),
            "remap_interval * Ly / pi must be an integer");
  }
  if (record_interval > 0) require(is_multiple(record_interval, dt), "record_interval must be a multiple of dt");
  require(ic.alpha_min >= 1 && ic.alpha_max >= ic.alpha_min, "band: need 1 <= alpha_min <= alpha_max");
  require(ic.eta_max >= 0, "band: eta_max must be >= 0");
  require(ic.envelope_width >= 0, "envelope_width must be >= 0");
  require(ic.zero_mode_amplitude >= 0, "zero_mode_amplitude must be >= 0");
  require(ic.zero_mode_width > 0, "zero_mode_width must be > 0");
  require(ic.mode_alpha >= 0, "mode_alpha must be >= 0");
  if (ic.target_hlog_norm) require(*ic.target_hlog_norm > 0, "target_hlog_norm must be > 0");
  if (ic.kind == IcKind::from_checkpoint) require(!ic.checkpoint_path.empty(), "checkpoint path missing");
}

json to_json(const SimConfig& c) {
  json ic = {{"kind", to_string(c.ic.kind)},
             {"alpha_min", c.ic.alpha_min},
             {"alpha_max", c.ic.alpha_max},
             {"eta_max", c.ic.eta_max},
             {"envelope_width", c.ic.envelope_width},
             {"mode_alpha", c.ic.mode_alpha},
             {"mode_eta", c.ic.mode_eta},
             {"checkpoint_path", c.ic.checkpoint_path},
             {"target_hlog_norm", c.ic.target_hlog_norm ? json(*c.ic.target_hlog_norm) : json()},
             {"zero_mode_amplitude", c.ic.zero_mode_amplitude},
             {"zero_mode_width", c.ic.zero_mode_width},
             {"galilean_mean", c.ic.galilean_mean}};
  return {{"nu", c.nu},
          {"beta", c.beta},
          {"epsilon0", c.epsilon0},
          {"ic", ic},
          {"dt", c.dt},
          {"t_final", c.t_final},
          {"remap_interval", c.remap_interval},
          {"nx", c.nx},
          {"ny", c.ny},
          {"ly", c.ly},
          {"dealias_fraction", c.dealias_fraction},
          {"seed", c.seed},
          {"nonlinear", c.nonlinear},
          {"allow_zero_nu", c.allow_zero_nu},
          {"remap_loss_bound", c.remap_loss_bound},
          {"cfl_max", c.cfl_max},
          {"cfl_policy", c.cfl_policy == CflPolicy::reduce ? "reduce" : "abort"},
          {"record_interval", c.record_interval},
          {"boundary_fraction_limit", c.boundary_fraction_limit},
          {"boundary_monitor", c.boundary_monitor},
          {"probe_nonlinear_terms", c.probe_nonlinear_terms}};
}

SimConfig sim_config_from_json(const json& j) {
  SimConfig c;
  const json& ic = j.at("ic");
  c.ic.kind = ic_kind_from_string(ic.at("kind").get<std::string>());
  c.ic.alpha_min = ic.at("alpha_min");
  c.ic.alpha_max = ic.at("alpha_max");
  c.ic.eta_max = ic.at("eta_max");
  c.ic.envelope_width = ic.at("envelope_width");
  c.ic.mode_alpha = ic.at("mode_alpha");
  c.ic.mode_eta = ic.at("mode_eta");
  c.ic.checkpoint_path = ic.at("checkpoint_path");
  if (!ic.at("target_hlog_norm").is_null()) c.ic.target_hlog_norm = ic.at("target_hlog_norm").get<double>();
  c.ic.zero_mode_amplitude = ic.at("zero_mode_amplitude");
  c.ic.zero_mode_width = ic.at("zero_mode_width");
  c.ic.galilean_mean = ic.at("galilean_mean");
  c.nu = j.at("nu");
  c.beta = j.at("beta");
  c.epsilon0 = j.at("epsilon0");
  c.dt = j.at("dt");
  c.t_final = j.at("t_final");
  c.remap_interval = j.at("remap_interval");
  c.nx = j.at("nx");
  c.ny = j.at("ny");
  c.ly = j.at("ly");
  c.dealias_fraction = j.at("dealias_fraction");
  c.seed = j.at("seed");
  c.nonlinear = j.at("nonlinear");
  c.allow_zero_nu = j.at("allow_zero_nu");
  c.remap_loss_bound = j.at("remap_loss_bound");
  c.cfl_max = j.at("cfl_max");
  c.cfl_policy = j.at("cfl_policy") == "abort" ? CflPolicy::abort : CflPolicy::reduce;
  c.record_interval = j.at("record_interval");
  c.boundary_fraction_limit = j.at("boundary_fraction_limit");
  c.boundary_monitor = j.at("boundary_monitor");
  c.probe_nonlinear_terms = j.at("probe_nonlinear_terms");
  return c;
}

std::string config_hash(const SimConfig& c) { return hex_digest(fnv1a64(to_json(c).dump())); }

}  // namespace couette::solver
