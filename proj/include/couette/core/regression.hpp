#pragma once

#include <span>

namespace couette {

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double rms_residual = 0;
  double slope_stderr = 0;  // zero when there are only two points
  std::size_t points = 0;
};

// Ordinary least squares y = intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Two-sided confidence half-width for the slope at the given level, using the
// Student t quantile with points - 2 degrees of freedom.
double slope_half_width(const LineFit& fit, double level = 0.95);

}  // namespace couette
