#pragma once

#include <span>
#include <string>

namespace couette::diagnostics {

enum class DecayRegime { exponential, super_exponential, insufficient_span, no_decay };
std::string to_string(DecayRegime r);

struct FitOptions {
  // Fit window as fractions of the initial value.
  double window_low = 1e-6;
  double window_high = 1e-1;
  double max_residual = 0.1;
};

struct RateFit {
  double c_fit = 0;      // rate in units of nu^(1/3)
  double prefactor = 0;  // C in v(t) ~ C e^(-c nu^(1/3) t) v(0)
  double t0 = 0, t1 = 0;
  double residual = 0;   // rms of the log-linear fit
  double half_life = 0;  // NaN when the series never halves
  DecayRegime regime = DecayRegime::no_decay;
  std::size_t points = 0;

  // The fitted rate is trustworthy only in the exponential regime.
  bool refused() const { return regime != DecayRegime::exponential; }
};

// Least squares of log v against nu^(1/3) t over the window. Outside the
// exponential regime half_life is the first crossing of v(0)/2
// (log-linear interpolation between samples) rather than ln 2 / (c nu^(1/3)).
RateFit fit_decay(std::span<const double> t, std::span<const double> v, double nu,
                  const FitOptions& options = {});

// First time v drops to v(0)/2, NaN if it never does.
double crossing_half_life(std::span<const double> t, std::span<const double> v);

}  // namespace couette::diagnostics
