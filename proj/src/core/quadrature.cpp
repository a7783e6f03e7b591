#include "couette/core/quadrature.hpp"

#include <algorithm>

#include "couette/core/error.hpp"

namespace couette {

namespace {

double simpson_odd(std::span<const double> v, double h) {
  const std::size_t n = v.size();
  double acc = v.front() + v.back();
  for (std::size_t k = 1; k + 1 < n; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * v[k];
  return acc * h / 3.0;
}

}  // namespace

double simpson(std::span<const double> v, double h) {
  const std::size_t n = v.size();
  if (n < 2) return 0.0;
  if (n == 2) return trapezoid(v, h);
  if (n % 2 == 1) return simpson_odd(v, h);
  const double tail = 3.0 * h / 8.0 * (v[n - 4] + 3 * v[n - 3] + 3 * v[n - 2] + v[n - 1]);
  if (n == 4) return tail;
  return simpson_odd(v.first(n - 3), h) + tail;
}

double trapezoid(std::span<const double> v, double h) {
  if (v.size() < 2) return 0.0;
  double acc = 0.5 * (v.front() + v.back());
  for (std::size_t k = 1; k + 1 < v.size(); ++k) acc += v[k];
  return acc * h;
}

double sampled_sup(std::span<const double> t, std::span<const double> v) {
  require(t.size() == v.size(), "sampled_sup: length mismatch");
  if (v.empty()) return 0;
  const std::size_t k = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  if (k == 0 || k + 1 == v.size()) return v[k];
  // Divided differences of the interpolating parabola.
  const double h0 = t[k] - t[k - 1], h1 = t[k + 1] - t[k];
  const double d0 = (v[k] - v[k - 1]) / h0, d1 = (v[k + 1] - v[k]) / h1;
  const double curv = (d1 - d0) / (h0 + h1);
  if (!(curv < 0)) return v[k];
  // p(s) = v[k] + b (s - t_k) + curv (s - t_k)^2 with b = d0 + curv h0.
  const double b = d0 + curv * h0;
  return std::max(v[k], v[k] - b * b / (4 * curv));
}

}  // namespace couette
