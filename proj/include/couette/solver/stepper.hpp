#pragma once

#include <optional>
#include <span>
#include <vector>

#include "couette/core/error.hpp"
#include "couette/solver/config.hpp"
#include "couette/solver/initial_condition.hpp"
#include "couette/solver/state.hpp"

namespace couette::solver {

// Carries the last state that was finite and consistent.
class StepFailure : public NumericalError {
 public:
  StepFailure(const std::string& what, TrajectoryState last_good)
      : NumericalError(what), last_good_(std::move(last_good)) {}
  const TrajectoryState& last_good() const { return last_good_; }

 private:
  TrajectoryState last_good_;
};

struct NonlinearEval {
  spectral::SpectralField rhs;        // -(V . grad omega), dealiased, in the frame of the input
  std::vector<Complex> v0_forcing;    // -d/dy <V2 V1>_x as y-coefficients
  double cfl_rate = 0;                // max|V1 - s V2| alpha_cut + max|V2| eta_cut
};

// V1 = V1_!= + v0 and V2 = V2_!= with V_!= from the Biot-Savart law in the
// frame of omega. v0_hat holds the (masked) y-coefficients of v0.
NonlinearEval nonlinear_term(const spectral::SpectralField& omega, std::span<const Complex> v0_hat);

TrajectoryState make_initial_state(const SimConfig& config, InitialData data);

// One integrating-factor RK4 step of length h (default state.dt). Under the
// reduce policy the step is halved until the CFL number fits; the returned
// state then carries the reduced dt and may not have advanced by h.
TrajectoryState step(const TrajectoryState& state, const SimConfig& config, std::optional<double> h = {});

// Re-expresses omega with frame offset 0 by relabelling coefficients (the
// offset times Ly/pi must be an integer); throws StepFailure when the dropped
// enstrophy fraction exceeds config.remap_loss_bound.
TrajectoryState remap(const TrajectoryState& state, const SimConfig& config);

// ||grad omega||^2 of the full field.
double gradient_sq(const spectral::SpectralField& omega);

}  // namespace couette::solver
