#include "couette/spectral/norms.hpp"

#include <algorithm>
#include <string>

#include "couette/spectral/transform.hpp"

namespace couette::spectral {

void require_finite(const SpectralField& f, const char* where) {
  if (!f.is_finite()) throw NumericalError(std::string(where) + ": non-finite coefficients");
}

NormBundle compute_norms(const SpectralField& f) {
  require_finite(f, "compute_norms");
  const auto& g = f.grid();
  double zero = 0, nonzero = 0, hlog = 0;
  for (int i = 0; i < g.nx(); ++i) {
    const double w = log_weight(g.alpha(i));
    double row = 0;
    for (int j = 0; j < g.ny(); ++j) row += std::norm(f(i, j));
    (g.alpha_label(i) == 0 ? zero : nonzero) += row;
    hlog += w * w * row;
  }
  const double pw = g.parseval_weight();
  NormBundle b;
  b.zero_l2 = std::sqrt(zero * pw);
  b.nonzero_l2 = std::sqrt(nonzero * pw);
  b.l2 = std::sqrt((zero + nonzero) * pw);
  b.hlog = std::sqrt(hlog * pw);
  b.linf = linf_norm(f);
  return b;
}

double l2_norm(const SpectralField& f) {
  return weighted_l2(f, [](double, double) { return 1.0; });
}

double hlog_norm(const SpectralField& f) {
  return weighted_l2(f, [](double a, double) { return log_weight(a); });
}

double hlog_gradient_norm(const SpectralField& f) {
  return weighted_l2(f, [](double a, double e) { return log_weight(a) * std::hypot(a, e); });
}

double linf_norm(const SpectralField& f) {
  const auto v = physical_values(f);
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double mixed_norm(const SpectralField& f, MixedNorm which) {
  require_finite(f, "mixed_norm");
  if (which == MixedNorm::linf_xy) return linf_norm(f);
  const auto& g = f.grid();
  const auto prof = y_profiles(f);
  double acc = 0;
  for (int i = 0; i < g.nx(); ++i) {
    double m = 0;
    for (int j = 0; j < g.ny(); ++j) m = std::max(m, std::abs(prof[g.index(i, j)]));
    acc += m * m;
  }
  return std::sqrt(2 * kPi * acc);
}

}  // namespace couette::spectral
