#include "couette/solver/state.hpp"

#include <fstream>

#include "couette/core/error.hpp"
#include "couette/spectral/checkpoint.hpp"

namespace couette::solver {

using nlohmann::json;

json to_json(const Accumulators& a) {
  return {{"grad_sq", a.grad_sq},
          {"grad_hlog_sq", a.grad_hlog_sq},
          {"dx_hlog", a.dx_hlog},
          {"log_linf_sq", a.log_linf_sq},
          {"v2_linf_sq", a.v2_linf_sq},
          {"v2_half_log_sq", a.v2_half_log_sq},
          {"v2_half_sq", a.v2_half_sq},
          {"dx_v1_hlog_sq", a.dx_v1_hlog_sq},
          {"dx_v1_sq", a.dx_v1_sq},
          {"remap_loss", a.remap_loss}};
}

Accumulators accumulators_from_json(const json& j) {
  Accumulators a;
  a.grad_sq = j.at("grad_sq");
  a.grad_hlog_sq = j.at("grad_hlog_sq");
  a.dx_hlog = j.at("dx_hlog");
  a.log_linf_sq = j.at("log_linf_sq");
  a.v2_linf_sq = j.at("v2_linf_sq");
  a.v2_half_log_sq = j.at("v2_half_log_sq");
  a.v2_half_sq = j.at("v2_half_sq");
  a.dx_v1_hlog_sq = j.at("dx_v1_hlog_sq");
  a.dx_v1_sq = j.at("dx_v1_sq");
  a.remap_loss = j.at("remap_loss");
  return a;
}

std::filesystem::path sidecar_path(const std::filesystem::path& checkpoint) {
  std::filesystem::path p = checkpoint;
  return p.replace_extension(".json");
}

void write_state_checkpoint(const std::filesystem::path& path, const TrajectoryState& state,
                            const std::string& config_hash) {
  spectral::write_checkpoint(path, state.omega, state.time);
  const json side = {{"config_hash", config_hash},
                     {"time", state.time},
                     {"step", state.step_count},
                     {"dt", state.dt},
                     {"accumulators", to_json(state.acc)},
                     {"v0", state.v0}};
  std::ofstream out(sidecar_path(path));
  out << side.dump(1) << '\n';
  if (!out) throw IoError("cannot write checkpoint sidecar " + sidecar_path(path).string());
}

StateCheckpoint read_state_checkpoint(const std::filesystem::path& path, double dealias_fraction) {
  spectral::Checkpoint cp = spectral::read_checkpoint(path, dealias_fraction);
  StateCheckpoint out;
  out.omega = std::move(cp.field);
  out.time = cp.time;
  std::ifstream in(sidecar_path(path));
  if (!in) return out;
  json side;
  try {
    in >> side;
    out.step_count = side.at("step");
    out.dt = side.at("dt");
    out.config_hash = side.at("config_hash");
    out.acc = accumulators_from_json(side.at("accumulators"));
    out.v0 = side.at("v0").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw IoError("malformed checkpoint sidecar " + sidecar_path(path).string() + ": " + e.what());
  }
  return out;
}

}  // namespace couette::solver
