#include "couette/experiments/scans.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "couette/core/error.hpp"
#include "couette/core/hash.hpp"
#include "couette/core/regression.hpp"
#include "couette/core/types.hpp"
#include "couette/diagnostics/fit.hpp"
#include "couette/experiments/journal.hpp"
#include "couette/linear/estimates.hpp"
#include "couette/lp/bony.hpp"
#include "couette/lp/inequalities.hpp"
#include "couette/lp/partition.hpp"
#include "couette/lp/schur.hpp"
#include "couette/solver/initial_condition.hpp"
#include "couette/solver/run.hpp"
#include "couette/solver/stepper.hpp"
#include "couette/spectral/norms.hpp"

namespace couette::experiments {

namespace fs = std::filesystem;
using nlohmann::json;
using diagnostics::BootstrapId;
using diagnostics::BootstrapValues;
using diagnostics::kBootstrapIds;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json num(double x) { return std::isfinite(x) ? json(x) : json(); }
double get_num(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return kNaN;
  return j[key].get<double>();
}

json values_json(const BootstrapValues& v) { return diagnostics::to_json(v); }
BootstrapValues values_from_json(const json& j) {
  BootstrapValues v{};
  for (std::size_t k = 0; k < kBootstrapIds.size(); ++k) v[k] = get_num(j, to_string(kBootstrapIds[k]).c_str());
  return v;
}

std::string run_hash(const json& identity) { return hex_digest(fnv1a64(identity.dump())); }

std::string format_g(double v, const char* fmt = "%g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void write_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = fs::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    out.flush();
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

fs::path scan_dir(const ExperimentPlan& plan) { return plan.output_dir / plan.scan_id; }

struct PlannedRun {
  std::string hash;
  ScanRow params;
  std::function<ScanRow(ScanRow)> execute;
};

void say(const ScanOptions& o, const std::string& msg) {
  if (o.log) o.log(msg);
}

ScanResult drive(const ExperimentPlan& plan, const std::vector<PlannedRun>& runs, const ScanOptions& options) {
  const fs::path dir = scan_dir(plan);
  fs::create_directories(dir);
  {
    std::ostringstream ini;
    write_plan(ini, plan);
    write_atomic(dir / "plan.ini", ini.str());
  }
  std::set<std::string> seen;
  for (const auto& r : runs)
    require(seen.insert(r.hash).second, "plan: two grid points describe the same run (" + r.hash + ")");

  Journal journal(dir / "journal.jsonl");
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (!journal.contains(runs[i].hash)) pending.push_back(i);
  say(options, "scan " + plan.scan_id + ": " + std::to_string(runs.size()) + " runs planned, " +
                   std::to_string(runs.size() - pending.size()) + " already journaled");
  if (options.max_new_runs >= 0 && pending.size() > static_cast<std::size_t>(options.max_new_runs))
    pending.resize(static_cast<std::size_t>(options.max_new_runs));

  const int width = options.workers > 0 ? options.workers : worker_count();
  parallel_for(pending.size(), width, [&](std::size_t k) {
    const PlannedRun& run = runs[pending[k]];
    ScanRow row;
    try {
      row = run.execute(run.params);
    } catch (const std::exception& e) {
      row = run.params;
      row.status = "failed";
      row.failure = e.what();
    }
    row.run_hash = run.hash;
    if (row.status != "ok") row.excluded = true;
    journal.append(run.hash, to_json(row));
    say(options, "  " + run.hash + " " + row.status + (row.failure.empty() ? "" : ": " + row.failure));
  });

  ScanResult result;
  result.kind = plan.kind;
  result.scan_id = plan.scan_id;
  result.planned = runs.size();
  result.executed = pending.size();
  for (const auto& run : runs) {
    ScanRow row;
    if (journal.contains(run.hash)) {
      row = scan_row_from_json(journal.row(run.hash));
    } else {
      row = run.params;
      row.run_hash = run.hash;
      row.status = "pending";
      row.excluded = true;
    }
    if (row.status != "ok") ++result.failures;
    result.rows.push_back(std::move(row));
  }
  return result;
}

void finish(const ExperimentPlan& plan, const ScanResult& result) {
  write_atomic(scan_dir(plan) / "scan.json", to_json(result).dump(2) + "\n");
}

double bootstrap_rate(const diagnostics::RateFit& f) {
  return std::isfinite(f.c_fit) && f.c_fit > 0 ? f.c_fit : 0.0;
}

json decay_series(const diagnostics::DiagnosticsRecord& rec) {
  json out = json::array();
  const auto& s = rec.samples;
  if (s.empty() || !(s.front().nonzero.hlog > 0)) return out;
  const std::size_t stride = std::max<std::size_t>(1, (s.size() + 255) / 256);
  const double v0 = s.front().nonzero.hlog;
  for (std::size_t k = 0; k < s.size(); k += stride) out.push_back({s[k].time, s[k].nonzero.hlog / v0});
  if ((s.size() - 1) % stride != 0) out.push_back({s.back().time, s.back().nonzero.hlog / v0});
  return out;
}

// Nonlinear run plus its linear twin (same data, nonlinearity off). The twin
// supplies the decay rate used in the bootstrap windows and the linear
// constants the budgets are built from.
ScanRow solver_row(const solver::SimConfig& config, const ExperimentPlan& plan, const fs::path& dir, ScanRow row) {
  config.validate();
  const auto data = solver::generate_initial_condition(config);
  const double tail = spectral_tail_fraction(data.omega);
  row.extra["tail_fraction"] = tail;
  if (tail > plan.tail_tolerance) {
    row.status = "under_resolved";
    row.failure = "initial spectrum tail " + format_g(tail) + " of peak";
    return row;
  }

  const double nu = config.nu;
  auto fit_of = [nu](const diagnostics::DiagnosticsRecord& rec) {
    const auto t = rec.times();
    const auto v = rec.nonzero_hlog();
    return diagnostics::fit_decay(t, v, nu);
  };

  BootstrapValues constants{};
  double rate = 0;
  if (config.nonlinear) {
    solver::SimConfig lin = config;
    lin.nonlinear = false;
    const auto twin = solver::run(lin);
    rate = bootstrap_rate(fit_of(twin.record));
    constants = diagnostics::max_ratios(diagnostics::bootstrap_history(twin.record, rate, plan.windows));
  }

  solver::RunResult result;
  try {
    result = solver::run(config);
  } catch (const solver::RunFailure& f) {
    result = f.partial();
    row.status = "failed";
    row.failure = f.what();
  }
  const auto& rec = result.record;
  const auto fit = fit_of(rec);
  if (!config.nonlinear) {
    rate = bootstrap_rate(fit);
    constants = diagnostics::max_ratios(diagnostics::bootstrap_history(rec, rate, plan.windows));
  }
  // Heat flow never increases ||V1_0||, so its ratio is at most 1 whatever
  // the twin measured (zero when the data has no shear-averaged part).
  constants[static_cast<std::size_t>(BootstrapId::B1_v0)] = 1.0;

  row.c_fit = fit.c_fit;
  // The measured crossing, not ln 2 / (c nu^(1/3)): a short record of cubic
  // decay fits an exponential well locally and the conversion then misleads.
  row.half_life = diagnostics::crossing_half_life(rec.times(), rec.nonzero_hlog());
  row.extra["fit_half_life"] = num(fit.half_life);
  row.regime = diagnostics::to_string(fit.regime);
  row.linear_constants = constants;
  if (!rec.samples.empty()) {
    const auto history = diagnostics::bootstrap_history(rec, rate, plan.windows);
    row.max_ratios = diagnostics::max_ratios(history);
    const auto budgets = diagnostics::budgets_from_constants(constants, plan.budget_factor);
    const auto cls = diagnostics::classify_run(history, budgets, diagnostics::failed_to_decay(rec));
    row.classification = diagnostics::to_string(cls.kind);
    if (cls.kind == diagnostics::RunClass::budget_exceeded) {
      row.violated_id = diagnostics::to_string(cls.id);
      row.violation_time = cls.time;
    }
    const double h0 = rec.samples.front().hlog;
    const auto& acc = result.final_state.acc;
    row.inviscid_v2_linf = acc.v2_linf_sq / (h0 * h0);
    row.inviscid_v2_half = acc.v2_half_sq / (h0 * h0);
    row.inviscid_dx_v1 = acc.dx_v1_sq / (h0 * h0);
    row.extra["decay"] = decay_series(rec);
    row.extra["decay_rate_used"] = rate;
  }
  row.excluded = row.status != "ok" || row.classification != "stable" || !std::isfinite(row.half_life);

  json extra = {{"scan_row", to_json(row)}};
  extra["scan_row"].erase("extra");
  solver::write_run_outputs(dir / row.run_hash, config, result, extra);
  for (const auto& e : result.io_errors) row.failure += (row.failure.empty() ? "" : "; ") + e;
  return row;
}

ScanRow base_row(double nu, double beta, double eps, std::uint64_t seed) {
  ScanRow r;
  r.nu = nu;
  r.beta = beta;
  r.epsilon0 = eps;
  r.seed = seed;
  return r;
}

json solver_identity(const solver::SimConfig& c, const ExperimentPlan& plan) {
  return {{"config", solver::to_json(c)}, {"windows", plan.windows}, {"budget_factor", plan.budget_factor},
          {"tail_tolerance", plan.tail_tolerance}};
}

std::vector<PlannedRun> solver_runs(const ExperimentPlan& plan, const std::vector<double>& betas,
                                    const std::vector<double>& epsilons) {
  std::vector<PlannedRun> runs;
  const fs::path dir = scan_dir(plan);
  for (double nu : plan.nus)
    for (double beta : betas)
      for (double eps : epsilons)
        for (auto seed : plan.seeds) {
          const auto cfg = sweep_config(plan, nu, beta, eps, seed);
          PlannedRun r;
          r.hash = run_hash(solver_identity(cfg, plan));
          r.params = base_row(nu, beta, eps, seed);
          r.params.run_hash = r.hash;
          r.execute = [cfg, &plan, dir](ScanRow row) { return solver_row(cfg, plan, dir, row); };
          runs.push_back(std::move(r));
        }
  return runs;
}

}  // namespace

json to_json(const ScanRow& r) {
  return {{"run_hash", r.run_hash},
          {"status", r.status},
          {"failure", r.failure},
          {"nu", r.nu},
          {"beta", r.beta},
          {"epsilon0", r.epsilon0},
          {"seed", r.seed},
          {"variant", r.variant},
          {"classification", r.classification},
          {"violated_id", r.violated_id},
          {"violation_time", r.violation_time},
          {"c_fit", num(r.c_fit)},
          {"half_life", num(r.half_life)},
          {"regime", r.regime},
          {"max_ratios", values_json(r.max_ratios)},
          {"linear_constants", values_json(r.linear_constants)},
          {"inviscid_v2_linf", num(r.inviscid_v2_linf)},
          {"inviscid_v2_half", num(r.inviscid_v2_half)},
          {"inviscid_dx_v1", num(r.inviscid_dx_v1)},
          {"excluded", r.excluded},
          {"extra", r.extra}};
}

ScanRow scan_row_from_json(const json& j) {
  ScanRow r;
  r.run_hash = j.at("run_hash");
  r.status = j.at("status");
  r.failure = j.at("failure");
  r.nu = j.at("nu");
  r.beta = j.at("beta");
  r.epsilon0 = j.at("epsilon0");
  r.seed = j.at("seed");
  r.variant = j.at("variant");
  r.classification = j.at("classification");
  r.violated_id = j.at("violated_id");
  r.violation_time = j.at("violation_time");
  r.c_fit = get_num(j, "c_fit");
  r.half_life = get_num(j, "half_life");
  r.regime = j.at("regime");
  r.max_ratios = values_from_json(j.at("max_ratios"));
  r.linear_constants = values_from_json(j.at("linear_constants"));
  r.inviscid_v2_linf = get_num(j, "inviscid_v2_linf");
  r.inviscid_v2_half = get_num(j, "inviscid_v2_half");
  r.inviscid_dx_v1 = get_num(j, "inviscid_dx_v1");
  r.excluded = j.at("excluded");
  r.extra = j.value("extra", json::object());
  return r;
}

json to_json(const ScanResult& r) {
  json rows = json::array(), fits = json::array(), thr = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  for (const auto& f : r.fits)
    fits.push_back({{"name", f.name},
                    {"slope", num(f.slope)},
                    {"intercept", num(f.intercept)},
                    {"ci_half_width", num(f.ci_half_width)},
                    {"points", f.points}});
  for (const auto& t : r.thresholds)
    thr.push_back({{"nu", t.nu}, {"beta", t.beta}, {"largest_stable_epsilon0", num(t.largest_stable_epsilon0)}});
  return {{"kind", to_string(r.kind)}, {"scan_id", r.scan_id}, {"planned", r.planned}, {"executed", r.executed},
          {"failures", r.failures},    {"rows", rows},          {"fits", fits},         {"thresholds", thr},
          {"extra", r.extra}};
}

ScanResult scan_result_from_json(const json& j) {
  ScanResult r;
  r.kind = plan_kind_from_string(j.at("kind"));
  r.scan_id = j.at("scan_id");
  r.planned = j.at("planned");
  r.executed = j.at("executed");
  r.failures = j.at("failures");
  for (const auto& row : j.at("rows")) r.rows.push_back(scan_row_from_json(row));
  for (const auto& f : j.at("fits"))
    r.fits.push_back({f.at("name"), get_num(f, "slope"), get_num(f, "intercept"), get_num(f, "ci_half_width"),
                      f.at("points")});
  for (const auto& t : j.at("thresholds"))
    r.thresholds.push_back({t.at("nu"), t.at("beta"), get_num(t, "largest_stable_epsilon0")});
  r.extra = j.value("extra", json::object());
  return r;
}

solver::SimConfig sweep_config(const ExperimentPlan& plan, double nu, double beta, double epsilon0,
                               std::uint64_t seed) {
  solver::SimConfig c = plan.base;
  c.nu = nu;
  c.beta = beta;
  c.epsilon0 = epsilon0;
  c.seed = seed;
  if (plan.auto_resolution) c.nx = c.ny = nu >= 1e-3 ? 256 : 512;
  if (plan.horizon > 0) {
    const double t = plan.horizon / std::cbrt(nu);
    c.t_final = std::ceil(t / c.remap_interval - 1e-9) * c.remap_interval;
  }
  return c;
}

double spectral_tail_fraction(const spectral::SpectralField& f) {
  const auto& g = f.grid();
  const double acut = 0.75 * g.alpha_cut(), ecut = 0.75 * g.eta_cut_label();
  double peak = 0, tail = 0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double a = std::abs(f(i, j));
      peak = std::max(peak, a);
      if (std::abs(g.alpha_label(i)) > acut || std::abs(g.eta_label(j)) > ecut) tail = std::max(tail, a);
    }
  return peak > 0 ? tail / peak : 0.0;
}

double nyquist_tail_fraction(const spectral::SpectralField& f) {
  double peak = 0;
  for (const auto& c : f.coeffs()) peak = std::max(peak, std::abs(c));
  return peak > 0 ? f.masked_max() / peak : 0.0;
}

double log_regularization_weight(double nu, double t) { return std::log(1.0 / (nu * t) + kE); }

double log_regularization_ratio(const spectral::SpectralField& omega, double nu, double t, double l2_in) {
  const double n = spectral::weighted_l2(omega, [](double a, double e) { return std::log(std::hypot(a, e) + kE); });
  return n / (log_regularization_weight(nu, t) * l2_in);
}

double sobolev_regularization_ratio(const spectral::SpectralField& omega, double eps, double nu, double t,
                                    double l2_in) {
  const double n = spectral::weighted_l2(omega, [eps](double a, double e) { return std::pow(std::hypot(a, e), eps); });
  return n * std::pow(t * nu, eps / 2) / l2_in;
}

ScalingFit fit_power_law(const std::string& name, const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), "fit_power_law: length mismatch");
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < x.size(); ++k) {
    require(x[k] > 0 && y[k] > 0, "fit_power_law: values must be positive");
    lx.push_back(std::log(x[k]));
    ly.push_back(std::log(y[k]));
  }
  const LineFit f = fit_line(lx, ly);
  ScalingFit s;
  s.name = name;
  s.slope = f.slope;
  s.intercept = f.intercept;
  s.points = f.points;
  s.ci_half_width = f.points > 2 ? slope_half_width(f, 0.95) : 0.0;
  return s;
}

ScanResult run_halflife_sweep(const ExperimentPlan& plan, const ScanOptions& options) {
  plan.validate();
  const auto [lo, hi] = std::minmax_element(plan.nus.begin(), plan.nus.end());
  require(std::log10(*hi / *lo) >= 1.5 - 1e-12, "halflife sweep: the nu list must span at least 1.5 decades");
  auto result = drive(plan, solver_runs(plan, {0.5}, {plan.epsilons.front()}), options);

  std::vector<double> x, y;
  for (const auto& r : result.rows)
    if (!r.excluded && std::isfinite(r.half_life) && r.half_life > 0) {
      x.push_back(r.nu);
      y.push_back(r.half_life);
    }
  std::set<double> distinct(x.begin(), x.end());
  if (distinct.size() >= 2) result.fits.push_back(fit_power_law("half_life", x, y));
  std::size_t excluded = 0;
  for (const auto& r : result.rows) excluded += r.excluded;
  result.extra["excluded_runs"] = excluded;
  finish(plan, result);
  return result;
}

ScanResult run_threshold_scan(const ExperimentPlan& plan, const ScanOptions& options) {
  plan.validate();
  auto result = drive(plan, solver_runs(plan, plan.betas, plan.epsilons), options);
  for (double nu : plan.nus)
    for (double beta : plan.betas) {
      ThresholdEntry t{nu, beta, kNaN};
      for (double eps : plan.epsilons) {
        bool all_stable = true;
        for (const auto& r : result.rows)
          if (r.nu == nu && r.beta == beta && r.epsilon0 == eps)
            all_stable = all_stable && r.status == "ok" && r.classification == "stable";
        if (all_stable && !(eps <= t.largest_stable_epsilon0)) t.largest_stable_epsilon0 = eps;
      }
      result.thresholds.push_back(t);
    }
  finish(plan, result);
  return result;
}

ScanResult run_linear_constants(const ExperimentPlan& plan, const ScanOptions& options) {
  plan.validate();
  std::vector<PlannedRun> runs;
  for (double nu : plan.nus)
    for (auto seed : plan.seeds) {
      const auto cfg = sweep_config(plan, nu, plan.base.beta, plan.base.epsilon0, seed);
      const double t_max = linear::default_t_max(nu);
      const int points = plan.quadrature_points > 0
                             ? plan.quadrature_points
                             : static_cast<int>(std::ceil(64 * t_max * std::cbrt(nu))) + 1;
      PlannedRun r;
      r.hash = run_hash({{"linear_constants", solver::to_json(cfg)}, {"t_max", t_max}, {"points", points}});
      r.params = base_row(nu, cfg.beta, cfg.epsilon0, seed);
      r.execute = [cfg, t_max, points](ScanRow row) {
        auto data = solver::generate_initial_condition(cfg);
        auto omega = data.omega;
        for (int j = 0; j < omega.grid().ny(); ++j) omega.at(0, j) = 0;
        const auto reports = linear::evaluate_linear_estimates(omega, cfg.nu, t_max, points);
        json arr = json::array();
        for (const auto& rep : reports)
          arr.push_back({{"quantity", linear::estimate_id(rep.quantity)},
                         {"value", num(rep.value)},
                         {"rhs_norm", num(rep.rhs_norm)},
                         {"ratio", num(rep.ratio)},
                         {"fitted_c", num(rep.fitted_c)},
                         {"truncated", rep.truncated},
                         {"note", rep.note}});
        row.extra["reports"] = arr;
        row.extra["t_max"] = t_max;
        row.extra["quadrature_points"] = points;
        return row;
      };
      runs.push_back(std::move(r));
    }
  auto result = drive(plan, runs, options);

  std::set<double> distinct(plan.nus.begin(), plan.nus.end());
  if (distinct.size() >= 2)
    for (auto q : linear::kLinearQuantities) {
      const std::string id = linear::estimate_id(q);
      std::vector<double> x, y;
      for (const auto& r : result.rows) {
        if (r.status != "ok") continue;
        for (const auto& rep : r.extra.at("reports"))
          if (rep.at("quantity") == id && !rep.at("ratio").is_null() && rep.at("ratio").get<double>() > 0) {
            x.push_back(r.nu);
            y.push_back(rep.at("ratio").get<double>());
          }
      }
      if (std::set<double>(x.begin(), x.end()).size() >= 2) result.fits.push_back(fit_power_law(id, x, y));
    }
  finish(plan, result);
  return result;
}

ScanResult run_regularization_check(const ExperimentPlan& plan, const ScanOptions& options) {
  plan.validate();
  std::vector<PlannedRun> runs;
  std::vector<double> exponents{0.0};
  exponents.insert(exponents.end(), plan.reg_exponents.begin(), plan.reg_exponents.end());
  const double tol = plan.tail_tolerance;
  for (double nu : plan.nus)
    for (auto seed : plan.seeds)
      for (double eps : exponents) {
        solver::SimConfig c = plan.base;
        c.nu = nu;
        c.seed = seed;
        c.nonlinear = true;
        c.boundary_monitor = false;
        c.t_final = plan.reg_horizon;
        c.remap_interval = plan.reg_horizon;
        c.ic.zero_mode_amplitude = 0;
        c.ic.galilean_mean = 0;
        c.ic.target_hlog_norm = 1.0;
        if (c.ic.kind == solver::IcKind::random_band) {
          // Flat spectrum over everything the grid keeps.
          const auto grid = c.make_grid();
          c.ic.alpha_min = 1;
          c.ic.alpha_max = grid->alpha_cut();
          c.ic.eta_max = grid->eta_cut();
          c.ic.envelope_width = 0;
        }
        // ||w_in|| = nu^(1/2) / |ln nu|, or nu^((1+eps)/2) for the H^eps variant.
        const double l2_in = eps == 0 ? std::sqrt(nu) / std::abs(std::log(nu)) : std::pow(nu, (1 + eps) / 2);
        PlannedRun r;
        r.hash = run_hash({{"regularization", solver::to_json(c)}, {"exponent", eps}, {"l2_in", l2_in},
                           {"tail_tolerance", tol}});
        r.params = base_row(nu, c.beta, c.epsilon0, seed);
        r.params.variant = eps == 0 ? "log" : "H^" + format_g(eps);
        r.execute = [c, eps, l2_in, tol](ScanRow row) {
          c.validate();
          auto data = solver::generate_initial_condition(c);
          const double tail = nyquist_tail_fraction(data.omega);
          row.extra["tail_fraction"] = tail;
          if (tail > tol) {
            row.status = "under_resolved";
            row.failure = "spectrum not decayed at the dealias cut: " + format_g(tail) + " of peak";
            return row;
          }
          data.omega *= l2_in / spectral::l2_norm(data.omega);
          double sup = 0, t_sup = 0;
          json series = json::array();
          auto observe = [&](const solver::TrajectoryState& st, const diagnostics::DiagnosticSample&) {
            if (st.time <= 0) return;
            const double ratio = eps == 0 ? log_regularization_ratio(st.omega, c.nu, st.time, l2_in)
                                          : sobolev_regularization_ratio(st.omega, eps, c.nu, st.time, l2_in);
            series.push_back({st.time, ratio});
            if (ratio > sup) {
              sup = ratio;
              t_sup = st.time;
            }
          };
          auto state = solver::make_initial_state(c, std::move(data));
          try {
            solver::run_from(c, std::move(state), {observe});
          } catch (const solver::RunFailure& f) {
            row.status = "failed";
            row.failure = f.what();
          }
          row.extra["exponent"] = eps;
          row.extra["l2_in"] = l2_in;
          row.extra["sup_ratio"] = sup;
          row.extra["t_at_sup"] = t_sup;
          row.extra["series"] = series;
          return row;
        };
        runs.push_back(std::move(r));
      }
  auto result = drive(plan, runs, options);

  // max / min of the supremum across nu, per variant and seed.
  json variation = json::object();
  for (double eps : exponents) {
    const std::string v = eps == 0 ? "log" : "H^" + format_g(eps);
    double lo = INFINITY, hi = 0;
    for (const auto& r : result.rows)
      if (r.variant == v && r.status == "ok") {
        const double s = r.extra.at("sup_ratio");
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
    variation[v] = hi > 0 && std::isfinite(lo) && lo > 0 ? json(hi / lo) : json();
  }
  result.extra["sup_variation"] = variation;
  finish(plan, result);
  return result;
}

LpStructuralChecks lp_structural_checks(std::uint64_t seed, int trials) {
  LpStructuralChecks out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const spectral::GridPtr grids[] = {spectral::make_grid(64, 64, kPi), spectral::make_grid(128, 16, kPi),
                                     spectral::make_grid(96, 128, 2 * kPi)};
  for (const auto& g : grids)
    for (auto dim : {lp::Dimension::circle, lp::Dimension::plane}) {
      const auto p = lp::partition_for(dim, *g);
      out.partition_residual = std::max(out.partition_residual, lp::partition_residual(p, *g));
      for (int t = 0; t < trials; ++t) {
        auto random = [&] {
          spectral::SpectralField f(g);
          for (auto& c : f.coeffs()) c = {normal(rng), normal(rng)};
          f.enforce_hermitian();
          f.apply_mask();
          return f;
        };
        const auto f = random(), h = random();
        spectral::SpectralField sum(g);
        for (int b = 0; b <= p.j_max; ++b) sum += lp::lp_block(f, b, p);
        out.reconstruction_residual = std::max(out.reconstruction_residual, relative_l2_error(sum, f));
        const auto tri = lp::bony(f, h, p);
        out.paraproduct_residual =
            std::max(out.paraproduct_residual, relative_l2_error(tri.tfg + tri.tstar_gf, tri.product));
      }
    }
  return out;
}

ScanResult run_lp_suite(const ExperimentPlan& plan, const ScanOptions& options) {
  plan.validate();
  const std::uint64_t seed = plan.seeds.empty() ? 1 : plan.seeds.front();
  std::vector<PlannedRun> runs;
  for (auto id : lp::kInequalityIds) {
    PlannedRun r;
    r.hash = run_hash({{"inequality", lp::to_string(id)}, {"samples", plan.lp_samples}, {"seed", seed},
                       {"tolerance", plan.lp_tolerance}});
    r.params.seed = seed;
    r.params.variant = lp::to_string(id);
    r.execute = [id, &plan, seed](ScanRow row) {
      const auto e = lp::run_suite_entry(id, plan.lp_samples, seed, plan.lp_tolerance);
      row.extra = {{"samples", plan.lp_samples},
                   {"base_resolution", e.base.resolution},
                   {"base_constant", num(e.base.max_constant_observed)},
                   {"doubled_resolution", e.doubled.resolution},
                   {"doubled_constant", num(e.doubled.max_constant_observed)},
                   {"change", num(e.change)},
                   {"stable", e.stable},
                   {"precondition_violations", e.base.precondition_violations + e.doubled.precondition_violations}};
      return row;
    };
    runs.push_back(std::move(r));
  }
  // Only ever one worker: each inequality already spreads its samples over threads.
  ScanOptions serial = options;
  serial.workers = 1;
  auto result = drive(plan, runs, serial);
  const auto checks = lp_structural_checks(seed);
  result.extra["partition_residual"] = checks.partition_residual;
  result.extra["reconstruction_residual"] = checks.reconstruction_residual;
  result.extra["paraproduct_residual"] = checks.paraproduct_residual;
  result.extra["schur_bound_jmax64"] = lp::schur_bound(lp::dyadic_kernel, 64);
  finish(plan, result);
  return result;
}

ScanResult run_scan(const ExperimentPlan& plan, const ScanOptions& options) {
  switch (plan.kind) {
    case PlanKind::halflife_sweep: return run_halflife_sweep(plan, options);
    case PlanKind::threshold_scan: return run_threshold_scan(plan, options);
    case PlanKind::linear_constants: return run_linear_constants(plan, options);
    case PlanKind::regularization_check: return run_regularization_check(plan, options);
    case PlanKind::lp_suite: return run_lp_suite(plan, options);
  }
  throw InvalidArgument("unknown plan kind");
}

}  // namespace couette::experiments
