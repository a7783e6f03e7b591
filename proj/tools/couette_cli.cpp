// couette: command line front end for the simulation and experiment harness.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 partial batch.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "couette/core/error.hpp"
#include "couette/experiments/journal.hpp"
#include "couette/experiments/plots.hpp"
#include "couette/experiments/scans.hpp"
#include "couette/experiments/settings.hpp"
#include "couette/solver/run.hpp"

namespace fs = std::filesystem;
namespace ex = couette::experiments;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kPartial = 3 };

struct Common {
  std::string config;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("config", c.config, "INI config file (defaults are used when omitted)");
  cmd->add_option("-s,--set", c.overrides, "override, section.key=value (repeatable)");
}

ex::ExperimentPlan load(const Common& c) {
  ex::ExperimentPlan plan = c.config.empty() ? ex::ExperimentPlan{} : ex::load_plan(c.config);
  for (const auto& o : c.overrides) ex::apply_override(plan, o);
  return plan;
}

void print_result(const ex::ScanResult& r) {
  std::printf("scan %s (%s): %zu planned, %zu run now, %zu not ok\n", r.scan_id.c_str(), ex::to_string(r.kind).c_str(),
              r.planned, r.executed, r.failures);
  for (const auto& f : r.fits)
    std::printf("  fit %s: slope %.6g +- %.3g over %zu points\n", f.name.c_str(), f.slope, f.ci_half_width, f.points);
  for (const auto& t : r.thresholds)
    std::printf("  nu %.3g beta %.3g: largest stable epsilon0 %.6g\n", t.nu, t.beta, t.largest_stable_epsilon0);
  if (!r.extra.empty()) std::printf("  %s\n", r.extra.dump().c_str());
}

int run_plan(ex::ExperimentPlan plan, ex::PlanKind kind) {
  plan.kind = kind;
  plan.validate();
  std::printf("%zu runs planned for scan %s\n", plan.total_runs(), plan.scan_id.c_str());
  std::fflush(stdout);
  ex::ScanOptions opts;
  opts.log = [](const std::string& m) {
    std::printf("%s\n", m.c_str());
    std::fflush(stdout);
  };
  const auto result = ex::run_scan(plan, opts);
  print_result(result);
  const auto plots = ex::emit_all_plots(result, plan.output_dir / plan.scan_id / "plots");
  for (const auto& e : plots.errors) std::fprintf(stderr, "plot data: %s\n", e.c_str());
  return result.complete() && plots.errors.empty() ? kOk : kPartial;
}

int simulate(const ex::ExperimentPlan& plan) {
  const auto& config = plan.base;
  config.validate();
  const std::string hash = couette::solver::config_hash(config);
  const fs::path dir = plan.output_dir / plan.scan_id / hash;
  std::printf("simulating %s into %s\n", hash.c_str(), dir.string().c_str());
  try {
    auto result = couette::solver::run(config, {}, {dir});
    std::printf("%s\n", couette::solver::run_summary(config, result).dump(2).c_str());
    return result.io_errors.empty() ? kOk : kNumerical;
  } catch (const couette::solver::RunFailure& f) {
    std::fprintf(stderr, "run stopped at t = %.6g: %s\n", f.partial().final_state.time, f.what());
    return kNumerical;
  }
}

int emit_plots(const ex::ExperimentPlan& plan, const std::string& result_path, const std::string& out_dir) {
  const fs::path scan = plan.output_dir / plan.scan_id;
  const fs::path path = result_path.empty() ? scan / "scan.json" : fs::path(result_path);
  std::ifstream in(path);
  if (!in) throw couette::InvalidArgument("cannot open scan result " + path.string());
  const auto result = ex::scan_result_from_json(json::parse(in));
  const fs::path dir = out_dir.empty() ? scan / "plots" : fs::path(out_dir);
  const auto out = ex::emit_all_plots(result, dir);
  for (const auto& f : out.files) std::printf("%s\n", f.string().c_str());
  for (const auto& e : out.errors) std::fprintf(stderr, "plot data: %s\n", e.c_str());
  return out.errors.empty() ? kOk : kPartial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Couette flow perturbation experiments"};
  app.require_subcommand(1);

  Common sim, lin, sweep, thr, reg, lp, plots;
  std::string result_path, plots_out;
  add_common(app.add_subcommand("simulate", "one solver run from [sim] and [ic]"), sim);
  add_common(app.add_subcommand("linear-constants", "linear estimate constant table"), lin);
  add_common(app.add_subcommand("sweep-halflife", "half-life against nu"), sweep);
  add_common(app.add_subcommand("scan-threshold", "stability map over (nu, beta, epsilon0)"), thr);
  add_common(app.add_subcommand("check-regularization", "regularization ratios for rough data"), reg);
  add_common(app.add_subcommand("verify-lp", "Littlewood-Paley checks and inequality constants"), lp);
  auto* plot_cmd = app.add_subcommand("emit-plots", "plot data files from a finished scan");
  add_common(plot_cmd, plots);
  plot_cmd->add_option("--result", result_path, "scan.json to read (default <outdir>/<scan-id>/scan.json)");
  plot_cmd->add_option("--out", plots_out, "directory for the data files (default <outdir>/<scan-id>/plots)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand("simulate")) return simulate(load(sim));
    if (app.got_subcommand("linear-constants")) return run_plan(load(lin), ex::PlanKind::linear_constants);
    if (app.got_subcommand("sweep-halflife")) return run_plan(load(sweep), ex::PlanKind::halflife_sweep);
    if (app.got_subcommand("scan-threshold")) return run_plan(load(thr), ex::PlanKind::threshold_scan);
    if (app.got_subcommand("check-regularization")) return run_plan(load(reg), ex::PlanKind::regularization_check);
    if (app.got_subcommand("verify-lp")) return run_plan(load(lp), ex::PlanKind::lp_suite);
    if (app.got_subcommand("emit-plots")) return emit_plots(load(plots), result_path, plots_out);
  } catch (const couette::InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return kNumerical;
  }
  return kUsage;
}
