#include "couette/core/regression.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "couette/core/error.hpp"

namespace couette {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), "fit_line: length mismatch");
  require(x.size() >= 2, "fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  require(sxx > 0, "fit_line: abscissae are all equal");
  LineFit f;
  f.points = x.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - (f.intercept + f.slope * x[k]);
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / n);
  if (x.size() > 2) f.slope_stderr = std::sqrt(ss / (n - 2) / sxx);
  return f;
}

double slope_half_width(const LineFit& fit, double level) {
  if (fit.points <= 2) return std::numeric_limits<double>::infinity();
  boost::math::students_t dist(static_cast<double>(fit.points - 2));
  const double q = boost::math::quantile(dist, 0.5 + level / 2);
  return q * fit.slope_stderr;
}

}  // namespace couette
