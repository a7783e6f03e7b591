#include "couette/diagnostics/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "couette/core/error.hpp"
#include "couette/core/regression.hpp"

namespace couette::diagnostics {

std::string to_string(DecayRegime r) {
  switch (r) {
    case DecayRegime::exponential: return "exponential";
    case DecayRegime::super_exponential: return "super_exponential";
    case DecayRegime::insufficient_span: return "insufficient_span";
    case DecayRegime::no_decay: return "no_decay";
  }
  return "unknown";
}

double crossing_half_life(std::span<const double> t, std::span<const double> v) {
  require(t.size() == v.size(), "crossing_half_life: length mismatch");
  if (v.empty() || !(v[0] > 0)) return std::numeric_limits<double>::quiet_NaN();
  const double target = 0.5 * v[0];
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] > target) continue;
    if (!(v[k] > 0)) return t[k];
    const double l0 = std::log(v[k - 1]), l1 = std::log(v[k]), lt = std::log(target);
    return t[k - 1] + (t[k] - t[k - 1]) * (l0 - lt) / (l0 - l1);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

RateFit fit_decay(std::span<const double> t, std::span<const double> v, double nu,
                  const FitOptions& options) {
  require(t.size() == v.size(), "fit_decay: length mismatch");
  require(nu > 0, "fit_decay: nu must be positive");
  RateFit fit;
  fit.half_life = crossing_half_life(t, v);
  if (v.size() < 2 || !(v[0] > 0)) return fit;
  const double v0 = v[0];
  const double vmin = *std::min_element(v.begin() + 1, v.end());
  if (!(vmin < v0)) return fit;

  const double scale = std::cbrt(nu);
  std::vector<double> xs, ys, ts;
  auto collect = [&](double lo, double hi) {
    xs.clear();
    ys.clear();
    ts.clear();
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double r = v[k] / v0;
      if (v[k] > 0 && r >= lo && r <= hi) {
        xs.push_back(scale * t[k]);
        ys.push_back(std::log(v[k]));
        ts.push_back(t[k]);
      }
    }
  };
  collect(options.window_low, options.window_high);
  bool short_span = xs.size() < 3;
  if (short_span) collect(options.window_low, 1.0);
  if (xs.size() < 2) {
    fit.regime = DecayRegime::insufficient_span;
    return fit;
  }
  const LineFit line = fit_line(xs, ys);
  fit.c_fit = -line.slope;
  fit.prefactor = std::exp(line.intercept) / v0;
  fit.residual = line.rms_residual;
  fit.t0 = ts.front();
  fit.t1 = ts.back();
  fit.points = xs.size();
  if (!(fit.c_fit > 0)) {
    fit.regime = DecayRegime::no_decay;
  } else if (short_span) {
    fit.regime = DecayRegime::insufficient_span;
  } else if (fit.residual > options.max_residual) {
    fit.regime = DecayRegime::super_exponential;
  } else {
    fit.regime = DecayRegime::exponential;
    fit.half_life = std::log(2.0) / (fit.c_fit * scale);
  }
  return fit;
}

}  // namespace couette::diagnostics
