#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "couette/experiments/scans.hpp"

namespace couette::experiments {

enum class PlotKind {
  decay_curves,      // t, ||w_!=||_Hlog relative to t = 0, series = row index
  halflife_loglog,   // nu, half-life, series = seed; plus the fitted line
  threshold_map,     // beta, epsilon0, fraction of seeds classified stable; one file per nu
  constant_table,    // nu (or resolution), constant, series = quantity index
  regularization,    // t, ratio, series = row index
};
std::string to_string(PlotKind k);
PlotKind plot_kind_from_string(const std::string& s);

// The figures that make sense for a result of the given plan kind.
std::vector<PlotKind> plots_for(PlanKind kind);

struct PlotOutput {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> errors;  // one per file that could not be written
};

// Whitespace separated columns under '#' header lines naming the axes and
// units. A figure without data still gets its header and a "# no data" line.
// Numbers are printed with 17 significant digits, so equal results give
// equal bytes.
PlotOutput emit_plot_data(const ScanResult& result, PlotKind kind, const std::filesystem::path& dir);
PlotOutput emit_all_plots(const ScanResult& result, const std::filesystem::path& dir);

}  // namespace couette::experiments
