#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "couette/diagnostics/bootstrap.hpp"
#include "couette/experiments/settings.hpp"
#include "couette/spectral/field.hpp"

namespace couette::experiments {

// One planned run. status is "ok", "failed" (the solver stopped or threw) or
// "under_resolved" (skipped by the resolution gate).
struct ScanRow {
  std::string run_hash;
  std::string status = "ok";
  std::string failure;
  double nu = 0, beta = 0, epsilon0 = 0;
  std::uint64_t seed = 0;
  std::string variant;  // regularization: "log" or "H^eps"; lp: the inequality id

  std::string classification;  // stable / budget_exceeded / transitioned
  std::string violated_id;
  double violation_time = 0;
  double c_fit = 0;
  double half_life = 0;  // NaN when the series never halves
  std::string regime;
  diagnostics::BootstrapValues max_ratios{};
  diagnostics::BootstrapValues linear_constants{};
  // int ||V2||_Linf^2, int || |D_x|^(1/2) V2 ||^2_{L2 Linf}, int ||dx V1||^2,
  // each divided by ||w_in||_Hlog^2.
  double inviscid_v2_linf = 0, inviscid_v2_half = 0, inviscid_dx_v1 = 0;
  // Left out of the scaling fits (failed, under-resolved or not stable).
  bool excluded = false;
  // Kind specific payload: decay series, estimate reports, ratio series,
  // inequality constants.
  nlohmann::json extra = nlohmann::json::object();
};

struct ScalingFit {
  std::string name;
  double slope = 0;
  double intercept = 0;
  double ci_half_width = 0;  // 95% two-sided; 0 with two points
  std::size_t points = 0;
};

struct ThresholdEntry {
  double nu = 0, beta = 0;
  double largest_stable_epsilon0 = 0;  // NaN when no epsilon0 is stable for every seed
};

struct ScanResult {
  PlanKind kind = PlanKind::halflife_sweep;
  std::string scan_id;
  std::size_t planned = 0;
  std::size_t executed = 0;  // runs computed by this invocation (the rest came from the journal)
  std::size_t failures = 0;  // rows whose status is not "ok"
  std::vector<ScanRow> rows;  // plan order
  std::vector<ScalingFit> fits;
  std::vector<ThresholdEntry> thresholds;
  nlohmann::json extra = nlohmann::json::object();

  bool complete() const { return failures == 0 && rows.size() == planned; }
};

nlohmann::json to_json(const ScanRow& r);
ScanRow scan_row_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScanResult& r);
ScanResult scan_result_from_json(const nlohmann::json& j);

struct ScanOptions {
  int workers = 0;          // 0: worker_count()
  long max_new_runs = -1;   // stop after this many fresh runs (the rest stay missing)
  std::function<void(const std::string&)> log;
};

// Dispatches on plan.kind. Results go to <output_dir>/<scan_id>/: one
// directory per run hash, journal.jsonl, plan.ini and scan.json. A run that
// already has a journal entry is not recomputed.
ScanResult run_scan(const ExperimentPlan& plan, const ScanOptions& options = {});

ScanResult run_halflife_sweep(const ExperimentPlan& plan, const ScanOptions& options = {});
ScanResult run_threshold_scan(const ExperimentPlan& plan, const ScanOptions& options = {});
ScanResult run_linear_constants(const ExperimentPlan& plan, const ScanOptions& options = {});
ScanResult run_regularization_check(const ExperimentPlan& plan, const ScanOptions& options = {});
ScanResult run_lp_suite(const ExperimentPlan& plan, const ScanOptions& options = {});

// The configuration a sweep or threshold run uses for one grid point.
solver::SimConfig sweep_config(const ExperimentPlan& plan, double nu, double beta, double epsilon0,
                               std::uint64_t seed);

// Largest |c| in the outer quarter of the retained band (|alpha| or |eta
// label| above 3/4 of the cut) relative to the largest |c| overall.
double spectral_tail_fraction(const spectral::SpectralField& f);
// Largest |c| outside the dealias mask relative to the largest |c|.
double nyquist_tail_fraction(const spectral::SpectralField& f);

// ln((nu t)^-1 + e)
double log_regularization_weight(double nu, double t);
// ||ln(|D| + e) w|| / (weight(nu, t) ||w_in||)
double log_regularization_ratio(const spectral::SpectralField& omega, double nu, double t, double l2_in);
// || |D|^eps w || (t nu)^(eps/2) / ||w_in||
double sobolev_regularization_ratio(const spectral::SpectralField& omega, double eps, double nu, double t,
                                    double l2_in);

// Log-log least squares of y against x with a 95% slope interval.
ScalingFit fit_power_law(const std::string& name, const std::vector<double>& x, const std::vector<double>& y);

struct LpStructuralChecks {
  double partition_residual = 0;       // worst over the circle and plane grids
  double reconstruction_residual = 0;  // relative, sum of blocks against the field
  double paraproduct_residual = 0;     // relative, T_f g + remainder against fg
};
LpStructuralChecks lp_structural_checks(std::uint64_t seed, int trials = 8);

}  // namespace couette::experiments
