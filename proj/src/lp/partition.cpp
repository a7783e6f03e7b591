#include "couette/lp/partition.hpp"

#include <algorithm>
#include <cmath>

#include "couette/core/error.hpp"
#include "couette/spectral/multipliers.hpp"

namespace couette::lp {

using spectral::GridSpec;
using spectral::SpectralField;

namespace {

constexpr double kInner = 0.75;
constexpr double kOuter = 4.0 / 3.0;

double smoothstep(double x) { return x * x * x * (x * (6 * x - 15) + 10); }

}  // namespace

double DyadicPartition::chi(double r) const {
  if (r <= kInner) return 1.0;
  if (r >= kOuter) return 0.0;
  return 1.0 - smoothstep((r - kInner) / (kOuter - kInner));
}

double DyadicPartition::phi(double r) const { return chi(0.5 * r) - chi(r); }

double DyadicPartition::block(int b, double r) const {
  if (b < 0 || b > j_max) return 0.0;
  if (b == 0) return chi(r);
  return phi(std::ldexp(r, -(b - 1)));
}

double DyadicPartition::low_pass(int m, double r) const {
  if (m < 0) return 0.0;
  return chi(std::ldexp(r, -std::min(m, j_max)));
}

double DyadicPartition::total(double r) const {
  double s = 0;
  for (int b = 0; b <= j_max; ++b) s += block(b, r);
  return s;
}

DyadicPartition build_partition(Dimension dimension, int j_max) {
  require(j_max >= 1, "build_partition: j_max must be >= 1");
  DyadicPartition p;
  p.dimension = dimension;
  p.j_max = j_max;
  return p;
}

double max_frequency(Dimension dimension, const GridSpec& grid) {
  const double a = grid.nx() / 2;
  if (dimension == Dimension::circle) return a;
  return std::hypot(a, grid.ny() / 2 * grid.eta_step());
}

DyadicPartition build_partition(Dimension dimension, int j_max, const GridSpec& grid) {
  DyadicPartition p = build_partition(dimension, j_max);
  require(std::ldexp(kInner, j_max - 1) < max_frequency(dimension, grid),
          "build_partition: j_max exceeds the grid's Nyquist frequency");
  return p;
}

int covering_j_max(Dimension dimension, const GridSpec& grid) {
  const double top = max_frequency(dimension, grid);
  int j = 1;
  while (std::ldexp(kInner, j) < top) ++j;
  return j;
}

DyadicPartition partition_for(Dimension dimension, const GridSpec& grid) {
  return build_partition(dimension, covering_j_max(dimension, grid), grid);
}

double partition_residual(const DyadicPartition& p, const GridSpec& grid) {
  double worst = 0;
  for (int i = 0; i < grid.nx(); ++i)
    for (int j = 0; j < grid.ny(); ++j) {
      const double a = grid.alpha(i);
      const double r = p.dimension == Dimension::circle ? std::abs(a) : std::hypot(a, grid.eta(j));
      worst = std::max(worst, std::abs(p.total(r) - 1.0));
    }
  return worst;
}

SpectralField lp_block(const SpectralField& f, int b, const DyadicPartition& p) {
  require(b >= 0 && b <= p.j_max, "lp_block: block index out of range");
  if (p.dimension == Dimension::circle)
    return spectral::apply_symbol(f, [&](double a, double) { return Complex(p.block(b, std::abs(a))); });
  return spectral::apply_symbol(f, [&](double a, double e) { return Complex(p.block(b, std::hypot(a, e))); });
}

SpectralField lp_low_pass(const SpectralField& f, int m, const DyadicPartition& p) {
  if (p.dimension == Dimension::circle)
    return spectral::apply_symbol(f, [&](double a, double) { return Complex(p.low_pass(m, std::abs(a))); });
  return spectral::apply_symbol(f,
                                [&](double a, double e) { return Complex(p.low_pass(m, std::hypot(a, e))); });
}

}  // namespace couette::lp
