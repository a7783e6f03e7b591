#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "couette/core/error.hpp"
#include "couette/diagnostics/record.hpp"
#include "couette/solver/config.hpp"
#include "couette/solver/state.hpp"

namespace couette::solver {

using Observer = std::function<void(const TrajectoryState&, const diagnostics::DiagnosticSample&)>;

struct RunOptions {
  // Empty: no files. Otherwise diagnostics.csv, summary.json and
  // checkpoint.bin (+ checkpoint.json) are written here.
  std::filesystem::path output_dir;
};

struct RunResult {
  std::string config_hash;
  diagnostics::DiagnosticsRecord record;
  TrajectoryState final_state;
  bool completed = false;
  std::string failure;  // why the run stopped early
  std::vector<std::string> io_errors;
};

// Thrown when integration stops early; partial() holds everything recorded
// up to the last good state (already written to disk when requested).
class RunFailure : public NumericalError {
 public:
  RunFailure(const std::string& what, RunResult partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const RunResult& partial() const { return partial_; }

 private:
  RunResult partial_;
};

RunResult run(const SimConfig& config, const std::vector<Observer>& observers = {},
              const RunOptions& options = {});

// Integrates from a prepared state (time and frame offset are taken from it).
RunResult run_from(const SimConfig& config, TrajectoryState initial,
                   const std::vector<Observer>& observers = {}, const RunOptions& options = {});

nlohmann::json run_summary(const SimConfig& config, const RunResult& result);

// Writes diagnostics.csv, summary.json and the checkpoint pair; failures are
// appended to result.io_errors rather than thrown.
void write_run_outputs(const std::filesystem::path& dir, const SimConfig& config, RunResult& result,
                       const nlohmann::json& extra_summary = {});

}  // namespace couette::solver
