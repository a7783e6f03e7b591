#include "couette/experiments/plots.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "couette/core/error.hpp"
#include "couette/linear/estimates.hpp"
#include "couette/lp/inequalities.hpp"

namespace couette::experiments {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(PlotKind k) {
  switch (k) {
    case PlotKind::decay_curves: return "decay_curves";
    case PlotKind::halflife_loglog: return "halflife_loglog";
    case PlotKind::threshold_map: return "threshold_map";
    case PlotKind::constant_table: return "constant_table";
    case PlotKind::regularization: return "regularization";
  }
  return "unknown";
}

PlotKind plot_kind_from_string(const std::string& s) {
  for (auto k : {PlotKind::decay_curves, PlotKind::halflife_loglog, PlotKind::threshold_map,
                 PlotKind::constant_table, PlotKind::regularization})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown plot kind: " + s);
}

std::vector<PlotKind> plots_for(PlanKind kind) {
  switch (kind) {
    case PlanKind::halflife_sweep:
      return {PlotKind::decay_curves, PlotKind::halflife_loglog, PlotKind::constant_table};
    case PlanKind::threshold_scan:
      return {PlotKind::decay_curves, PlotKind::threshold_map, PlotKind::constant_table};
    case PlanKind::linear_constants:
    case PlanKind::lp_suite: return {PlotKind::constant_table};
    case PlanKind::regularization_check: return {PlotKind::regularization};
  }
  return {};
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Builds one file: header lines, then rows, or the no-data marker.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::string> rows;

  void add(double x, double y) { rows.push_back(g17(x) + " " + g17(y)); }
  void add(double x, double y, double s) { rows.push_back(g17(x) + " " + g17(y) + " " + g17(s)); }
  std::string text() const {
    std::string out;
    for (const auto& h : header) out += "# " + h + "\n";
    if (rows.empty()) out += "# no data\n";
    for (const auto& r : rows) out += r + "\n";
    return out;
  }
};

void write_tables(const std::vector<Table>& tables, const fs::path& dir, PlotOutput& out) {
  for (const auto& t : tables) {
    const fs::path path = dir / t.name;
    try {
      fs::create_directories(dir);
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      f << t.text();
      f.flush();
      if (!f) throw IoError("cannot write " + path.string());
      out.files.push_back(path);
    } catch (const std::exception& e) {
      out.errors.push_back(path.string() + ": " + e.what());
    }
  }
}

std::vector<Table> decay_tables(const ScanResult& r) {
  Table t{"decay_curves.dat",
          {"figure: decay of the nonzero modes", "x: t [time units]",
           "y: ||w_!=(t)||_Hlog / ||w_!=(0)||_Hlog [1]", "series: row index"},
          {}};
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    if (!row.extra.contains("decay")) continue;
    t.header.push_back("row " + std::to_string(i) + ": nu=" + g17(row.nu) + " beta=" + g17(row.beta) +
                       " epsilon0=" + g17(row.epsilon0) + " seed=" + std::to_string(row.seed));
    for (const auto& p : row.extra["decay"]) t.add(p[0].get<double>(), p[1].get<double>(), static_cast<double>(i));
  }
  return {t};
}

std::vector<Table> halflife_tables(const ScanResult& r) {
  Table pts{"halflife_vs_nu.dat",
            {"figure: half-life against viscosity (log-log)", "x: nu [1]", "y: half-life of ||w_!=||_Hlog [time units]",
             "series: seed"},
            {}};
  double lo = INFINITY, hi = 0;
  for (const auto& row : r.rows) {
    if (row.excluded || !std::isfinite(row.half_life)) continue;
    pts.add(row.nu, row.half_life, static_cast<double>(row.seed));
    lo = std::min(lo, row.nu);
    hi = std::max(hi, row.nu);
  }
  Table fit{"halflife_fit.dat", {"figure: fitted power law", "x: nu [1]", "y: exp(intercept) nu^slope [time units]"}, {}};
  for (const auto& f : r.fits)
    if (f.name == "half_life" && hi > 0) {
      fit.header.push_back("slope = " + g17(f.slope) + " +- " + g17(f.ci_half_width) + " (95%), points = " +
                           std::to_string(f.points));
      for (double nu : {lo, hi}) fit.add(nu, std::exp(f.intercept) * std::pow(nu, f.slope));
    }
  return {pts, fit};
}

std::vector<Table> threshold_tables(const ScanResult& r) {
  std::vector<Table> out;
  std::set<double> nus;
  for (const auto& row : r.rows) nus.insert(row.nu);
  for (double nu : nus) {
    char name[64];
    std::snprintf(name, sizeof name, "threshold_map_nu%.3g.dat", nu);
    Table t{name,
            {"figure: classification map at nu = " + g17(nu), "x: beta [1]", "y: epsilon0 [1]",
             "series: fraction of seeds classified stable [1]"},
            {}};
    std::map<std::pair<double, double>, std::pair<int, int>> cells;
    for (const auto& row : r.rows)
      if (row.nu == nu) {
        auto& c = cells[{row.beta, row.epsilon0}];
        c.first += row.status == "ok" && row.classification == "stable";
        ++c.second;
      }
    for (const auto& [k, c] : cells) t.add(k.first, k.second, static_cast<double>(c.first) / c.second);
    for (const auto& th : r.thresholds)
      if (th.nu == nu)
        t.header.push_back("largest stable epsilon0 at beta = " + g17(th.beta) + ": " +
                           (std::isfinite(th.largest_stable_epsilon0) ? g17(th.largest_stable_epsilon0) : "none"));
    out.push_back(t);
  }
  if (out.empty())
    out.push_back({"threshold_map.dat", {"figure: classification map", "x: beta [1]", "y: epsilon0 [1]",
                                         "series: fraction of seeds classified stable [1]"},
                   {}});
  return out;
}

std::vector<Table> constant_tables(const ScanResult& r) {
  if (r.kind == PlanKind::linear_constants) {
    Table t{"linear_constants.dat", {"figure: linear estimate constants", "x: nu [1]", "y: measured ratio [1]",
                                     "series: quantity index"},
            {}};
    for (std::size_t q = 0; q < linear::kLinearQuantities.size(); ++q)
      t.header.push_back(std::to_string(q) + " = " + linear::estimate_id(linear::kLinearQuantities[q]));
    for (const auto& row : r.rows) {
      if (row.status != "ok" || !row.extra.contains("reports")) continue;
      for (const auto& rep : row.extra["reports"])
        for (std::size_t q = 0; q < linear::kLinearQuantities.size(); ++q)
          if (rep.at("quantity") == linear::estimate_id(linear::kLinearQuantities[q]) && !rep.at("ratio").is_null())
            t.add(row.nu, rep.at("ratio").get<double>(), static_cast<double>(q));
    }
    return {t};
  }
  if (r.kind == PlanKind::lp_suite) {
    Table t{"lp_constants.dat", {"figure: empirical inequality constants", "x: resolution [grid points or j_max]",
                                 "y: max constant observed [1]", "series: inequality index"},
            {}};
    for (std::size_t q = 0; q < std::size(lp::kInequalityIds); ++q)
      t.header.push_back(std::to_string(q) + " = " + lp::to_string(lp::kInequalityIds[q]));
    for (const auto& row : r.rows) {
      if (row.status != "ok") continue;
      for (std::size_t q = 0; q < std::size(lp::kInequalityIds); ++q) {
        if (row.variant != lp::to_string(lp::kInequalityIds[q])) continue;
        const auto& e = row.extra;
        if (!e.at("base_constant").is_null())
          t.add(e.at("base_resolution").get<double>(), e.at("base_constant").get<double>(), static_cast<double>(q));
        if (!e.at("doubled_constant").is_null())
          t.add(e.at("doubled_resolution").get<double>(), e.at("doubled_constant").get<double>(),
                static_cast<double>(q));
      }
    }
    return {t};
  }
  Table t{"bootstrap_ratios.dat", {"figure: largest bootstrap ratio per run", "x: nu [1]",
                                   "y: max ratio / linear constant [1]", "series: bootstrap id index"},
          {}};
  for (std::size_t k = 0; k < diagnostics::kBootstrapIds.size(); ++k)
    t.header.push_back(std::to_string(k) + " = " + diagnostics::to_string(diagnostics::kBootstrapIds[k]));
  for (const auto& row : r.rows) {
    if (row.status != "ok" || row.classification.empty()) continue;
    for (std::size_t k = 0; k < diagnostics::kBootstrapIds.size(); ++k) {
      const double c = row.linear_constants[k];
      if (c > 0 && std::isfinite(row.max_ratios[k])) t.add(row.nu, row.max_ratios[k] / c, static_cast<double>(k));
    }
  }
  return {t};
}

std::vector<Table> regularization_tables(const ScanResult& r) {
  Table t{"regularization.dat", {"figure: regularization ratios", "x: t [time units]",
                                 "y: ratio of the smoothed norm to its bound [1]", "series: row index"},
          {}};
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    if (!row.extra.contains("series")) continue;
    t.header.push_back("row " + std::to_string(i) + ": nu=" + g17(row.nu) + " variant=" + row.variant +
                       " seed=" + std::to_string(row.seed));
    for (const auto& p : row.extra["series"]) t.add(p[0].get<double>(), p[1].get<double>(), static_cast<double>(i));
  }
  return {t};
}

}  // namespace

PlotOutput emit_plot_data(const ScanResult& result, PlotKind kind, const fs::path& dir) {
  std::vector<Table> tables;
  switch (kind) {
    case PlotKind::decay_curves: tables = decay_tables(result); break;
    case PlotKind::halflife_loglog: tables = halflife_tables(result); break;
    case PlotKind::threshold_map: tables = threshold_tables(result); break;
    case PlotKind::constant_table: tables = constant_tables(result); break;
    case PlotKind::regularization: tables = regularization_tables(result); break;
  }
  PlotOutput out;
  write_tables(tables, dir, out);
  return out;
}

PlotOutput emit_all_plots(const ScanResult& result, const fs::path& dir) {
  PlotOutput all;
  for (auto k : plots_for(result.kind)) {
    auto o = emit_plot_data(result, k, dir);
    all.files.insert(all.files.end(), o.files.begin(), o.files.end());
    all.errors.insert(all.errors.end(), o.errors.begin(), o.errors.end());
  }
  return all;
}

}  // namespace couette::experiments
