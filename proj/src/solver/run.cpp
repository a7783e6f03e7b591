#include "couette/solver/run.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "couette/diagnostics/bootstrap.hpp"
#include "couette/diagnostics/fit.hpp"
#include "couette/solver/initial_condition.hpp"
#include "couette/solver/stepper.hpp"

namespace couette::solver {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool reached(double t, double target) { return t >= target - 1e-9 * std::max(1.0, std::abs(target)); }

void write_text(const fs::path& path, const std::string& text) {
  const fs::path tmp = fs::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    out.flush();
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

json run_summary(const SimConfig& config, const RunResult& result) {
  const auto& rec = result.record;
  json j = {{"config_hash", result.config_hash},
            {"config", to_json(config)},
            {"completed", result.completed},
            {"failure", result.failure},
            {"time", result.final_state.time},
            {"steps", result.final_state.step_count},
            {"dt_final", result.final_state.dt},
            {"accumulators", to_json(result.final_state.acc)}};
  if (rec.samples.size() >= 2 && config.nu > 0) {
    const auto fit = diagnostics::fit_decay(rec.times(), rec.nonzero_hlog(), config.nu);
    j["fit"] = diagnostics::to_json(fit);
  }
  if (!rec.samples.empty()) {
    const auto& s0 = rec.samples.front();
    const auto& s1 = rec.samples.back();
    const double e0 = s0.l2 * s0.l2;
    j["enstrophy_initial"] = e0;
    j["enstrophy_final"] = s1.l2 * s1.l2;
    j["enstrophy_residual"] = s1.l2 * s1.l2 + 2 * config.nu * result.final_state.acc.grad_sq - e0;
    double bmax = 0;
    for (const auto& s : rec.samples) bmax = std::max(bmax, s.boundary_fraction);
    j["boundary_fraction_max"] = bmax;
  }
  return j;
}

void write_run_outputs(const fs::path& dir, const SimConfig& config, RunResult& result,
                       const json& extra_summary) {
  try {
    fs::create_directories(dir);
    std::ostringstream csv;
    diagnostics::write_diagnostics_csv(csv, result.record);
    write_text(dir / "diagnostics.csv", csv.str());
    if (result.final_state.omega.grid_ptr())
      write_state_checkpoint(dir / "checkpoint.bin", result.final_state, result.config_hash);
    json summary = run_summary(config, result);
    if (extra_summary.is_object())
      for (const auto& [k, v] : extra_summary.items()) summary[k] = v;
    summary["io_errors"] = result.io_errors;
    write_text(dir / "summary.json", summary.dump(1) + "\n");
  } catch (const std::exception& e) {
    result.io_errors.push_back(e.what());
  }
}

RunResult run_from(const SimConfig& config, TrajectoryState st, const std::vector<Observer>& observers,
                   const RunOptions& options) {
  config.validate();
  RunResult result;
  result.config_hash = config_hash(config);
  result.record.nu = config.nu;

  auto record = [&](const TrajectoryState& s) {
    diagnostics::DiagnosticSample d =
        diagnostics::sample_state(s.time, s.step_count, s.dt, s.omega, s.v0, config.probe_nonlinear_terms);
    d.remap_loss = s.acc.remap_loss;
    result.record.samples.push_back(d);
    for (const auto& ob : observers) ob(s, d);
    if (config.boundary_monitor && d.boundary_fraction > config.boundary_fraction_limit)
      throw StepFailure("boundary monitor: enstrophy fraction " + std::to_string(d.boundary_fraction) +
                            " near |y| = Ly exceeds the limit",
                        s);
  };

  const double inf = std::numeric_limits<double>::infinity();
  const double rec_int = config.record_interval;
  double last_remap = st.time - st.omega.frame().offset();
  double next_remap = config.remapping() ? last_remap + config.remap_interval : inf;
  double next_rec = rec_int > 0 ? st.time + rec_int : inf;

  try {
    record(st);
    while (!reached(st.time, config.t_final)) {
      const double event = std::min({next_rec, next_remap, config.t_final});
      const double h = std::min(st.dt, event - st.time);
      st = step(st, config, h);
      if (reached(st.time, event) && st.time != event) st.time = event;
      st.omega.set_frame(spectral::Frame::sheared(st.time - last_remap));
      if (reached(st.time, next_remap)) {
        st = remap(st, config);
        last_remap = next_remap;
        next_remap += config.remap_interval;
      }
      if (rec_int <= 0 || reached(st.time, next_rec)) {
        record(st);
        if (rec_int > 0) next_rec += rec_int;
      }
    }
    result.completed = true;
  } catch (const StepFailure& e) {
    result.failure = e.what();
    result.final_state = e.last_good();
    if (!options.output_dir.empty()) write_run_outputs(options.output_dir, config, result);
    throw RunFailure(e.what(), std::move(result));
  }
  result.final_state = std::move(st);
  if (!options.output_dir.empty()) write_run_outputs(options.output_dir, config, result);
  return result;
}

RunResult run(const SimConfig& config, const std::vector<Observer>& observers, const RunOptions& options) {
  config.validate();
  return run_from(config, make_initial_state(config, generate_initial_condition(config)), observers, options);
}

}  // namespace couette::solver
