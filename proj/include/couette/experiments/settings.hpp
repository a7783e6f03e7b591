#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "couette/solver/config.hpp"

namespace couette::experiments {

enum class PlanKind { halflife_sweep, threshold_scan, linear_constants, regularization_check, lp_suite };
std::string to_string(PlanKind k);
PlanKind plan_kind_from_string(const std::string& s);

struct ExperimentPlan {
  PlanKind kind = PlanKind::halflife_sweep;
  std::vector<double> nus{1e-2, 3e-3, 1e-3, 3e-4};
  std::vector<double> betas{0.5};
  std::vector<double> epsilons{1e-2};
  std::vector<std::uint64_t> seeds{1};
  solver::SimConfig base;
  std::filesystem::path output_dir = "runs";
  std::string scan_id = "scan";

  // Run length in units of nu^(-1/3); 0 keeps base.t_final.
  double horizon = 4.0;
  // 256^2 for nu >= 1e-3 and 512^2 below instead of the base grid.
  bool auto_resolution = false;
  int windows = 16;
  double budget_factor = 8.0;
  // Runs whose initial spectrum is not below this fraction of its peak in
  // the outer quarter of the retained band are skipped and flagged.
  double tail_tolerance = 1e-8;

  // regularization_check
  std::vector<double> reg_exponents{0.1, 0.5};
  double reg_horizon = 1.0;

  // lp_suite
  int lp_samples = 1000;
  double lp_tolerance = 0.1;

  // linear_constants
  int quadrature_points = 0;  // 0: 64 samples per nu^(-1/3)

  void validate() const;
  // Number of runs (or inequality checks) the plan launches.
  std::size_t total_runs() const;
};

// Sections [sim], [ic], [plan] and [output]; list values are comma
// separated. Unknown sections or keys throw InvalidArgument.
ExperimentPlan parse_plan(std::istream& in);
ExperimentPlan load_plan(const std::filesystem::path& path);

// "section.key=value", same rules as the file.
void apply_override(ExperimentPlan& plan, const std::string& assignment);

// The file format again, every key spelled out; parse_plan reads it back.
void write_plan(std::ostream& out, const ExperimentPlan& plan);

}  // namespace couette::experiments
