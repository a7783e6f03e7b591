#include "couette/solver/initial_condition.hpp"

#include <cmath>
#include <random>

#include "couette/core/error.hpp"
#include "couette/solver/state.hpp"
#include "couette/spectral/multipliers.hpp"
#include "couette/spectral/norms.hpp"
#include "couette/spectral/reframe.hpp"
#include "couette/spectral/resample.hpp"
#include "couette/spectral/transform.hpp"

namespace couette::solver {

using namespace spectral;

namespace {

std::vector<Complex> masked_y(const GridSpec& g, std::vector<Complex> c) {
  for (int j = 0; j < g.ny(); ++j)
    if (!g.eta_kept(j)) c[j] = 0;
  return c;
}

SpectralField random_band(const InitialConditionSpec& spec, const GridPtr& grid, std::uint64_t seed) {
  const GridSpec& g = *grid;
  const int emax = static_cast<int>(std::floor(spec.eta_max / g.eta_step() + 1e-9));
  require(spec.alpha_max >= spec.alpha_min && spec.alpha_min >= 1, "empty band");
  require(spec.alpha_max <= g.alpha_cut() && emax <= g.eta_cut_label(),
          "band exceeds the dealiased grid resolution");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SpectralField w(grid, Frame::sheared(0));
  for (int a = spec.alpha_min; a <= spec.alpha_max; ++a) {
    for (int e = -emax; e <= emax; ++e) {
      const double re = normal(rng);
      const double im = normal(rng);
      w.set_mode(a, e, {re, im});
      w.set_mode(-a, -e, {re, -im});
    }
  }
  if (spec.envelope_width > 0) {
    std::vector<double> v = transform_inverse(w);
    const double s2 = 2 * spec.envelope_width * spec.envelope_width;
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) v[g.index(i, j)] *= std::exp(-g.y(j) * g.y(j) / s2);
    w = transform_forward(grid, v, Frame::sheared(0));
    w.apply_mask();
    const int a0 = g.alpha_index(0);
    for (int j = 0; j < g.ny(); ++j) w.at(a0, j) = 0;
  }
  return w;
}

SpectralField single_mode(const InitialConditionSpec& spec, const GridPtr& grid) {
  const GridSpec& g = *grid;
  const double label = spec.mode_eta / g.eta_step();
  require(std::abs(label - std::round(label)) < 1e-9, "mode_eta is not a wavenumber of the y-box");
  require(spec.mode_alpha != 0 || spec.mode_eta != 0, "single_mode (0,0) is a constant vorticity");
  require(std::abs(spec.mode_alpha) <= g.alpha_cut() && std::abs(std::lround(label)) <= g.eta_cut_label(),
          "mode exceeds the dealiased grid resolution");
  // cos(a x) cos(e y) = (1/4) sum over the four sign combinations.
  const int e = static_cast<int>(std::lround(label));
  SpectralField w(grid, Frame::sheared(0));
  for (int sa : {1, -1})
    for (int se : {1, -1}) w.set_mode(sa * spec.mode_alpha, se * e, w.mode(sa * spec.mode_alpha, se * e) + 0.25);
  return w;
}

SpectralField from_checkpoint(const InitialConditionSpec& spec, const GridPtr& grid, std::vector<double>& v0) {
  const StateCheckpoint cp = read_state_checkpoint(spec.checkpoint_path, grid->dealias_fraction());
  SpectralField w = cp.omega;
  // Back to offset 0 when the shift is a whole number of y-wavenumbers;
  // otherwise the run starts mid-interval in the stored frame.
  const double shift = w.frame().offset() / w.grid().eta_step();
  if (w.frame().kind == FrameKind::stationary)
    w.set_frame(Frame::sheared(0));
  else if (w.frame().offset() != 0 && std::abs(shift - std::round(shift)) < 1e-9)
    w = reframe(w, 0.0).field;
  if (!w.grid().same_as(*grid)) w = resample(w, grid);
  if (cp.v0.size() == static_cast<std::size_t>(grid->ny())) v0 = cp.v0;
  return w;
}

}  // namespace

std::vector<double> zero_mode_profile(const GridSpec& g, double l2_norm, double width) {
  std::vector<double> p(g.ny());
  double sq = 0;
  for (int j = 0; j < g.ny(); ++j) {
    const double y = g.y(j);
    p[j] = y * std::exp(-y * y / (2 * width * width));
    sq += p[j] * p[j] * g.dy();
  }
  const double s = sq > 0 ? l2_norm / std::sqrt(sq) : 0.0;
  for (double& x : p) x *= s;
  return inverse_y(g, masked_y(g, forward_y(g, p)));
}

InitialData generate_initial_condition(const InitialConditionSpec& spec, const GridPtr& grid,
                                       std::uint64_t seed, double target_hlog_norm) {
  require(target_hlog_norm > 0 && std::isfinite(target_hlog_norm), "target norm must be > 0");
  const GridSpec& g = *grid;
  const int ny = g.ny();
  const int a0 = g.alpha_index(0);

  std::vector<double> v0_given;
  SpectralField w;
  switch (spec.kind) {
    case IcKind::random_band: w = random_band(spec, grid, seed); break;
    case IcKind::single_mode: w = single_mode(spec, grid); break;
    case IcKind::from_checkpoint: w = from_checkpoint(spec, grid, v0_given); break;
  }

  std::vector<Complex> v0_hat(ny);
  Complex mean = spec.galilean_mean;
  if (spec.zero_mode_amplitude > 0) {
    // The localized shear profile fixes omega_0 = -d/dy v0.
    v0_hat = forward_y(g, zero_mode_profile(g, spec.zero_mode_amplitude, spec.zero_mode_width));
    for (int j = 0; j < ny; ++j) w.at(a0, j) = Complex(0, -g.eta(j)) * v0_hat[j];
  } else if (!v0_given.empty()) {
    v0_hat = forward_y(g, v0_given);
    mean = v0_hat[0];
  } else {
    // V1_0 recovered from omega_0; the bulk (eta = 0) part is the Galilean mean.
    w.at(a0, 0) = 0;
    for (int j = 1; j < ny; ++j)
      if (g.eta_kept(j)) v0_hat[j] = Complex(0, 1) * w(a0, j) / g.eta(j);
  }

  const SpectralField wz = project_zero(w);
  const double h0 = l2_norm(wz);
  const double hn = hlog_norm(project_nonzero(w));
  require(h0 > 0 || hn > 0, "generated initial vorticity is zero");
  if (hn > 0) {
    require(h0 < target_hlog_norm, "target norm smaller than the prescribed zero-mode part");
    const double s = std::sqrt(target_hlog_norm * target_hlog_norm - h0 * h0) / hn;
    for (int i = 0; i < g.nx(); ++i) {
      if (i == a0) continue;
      for (int j = 0; j < ny; ++j) w.at(i, j) *= s;
    }
  } else {
    const double s = target_hlog_norm / h0;
    w *= s;
    for (auto& c : v0_hat) c *= s;
  }

  v0_hat[0] = mean;
  InitialData out{std::move(w), inverse_y(g, v0_hat)};
  return out;
}

InitialData generate_initial_condition(const SimConfig& config) {
  const GridPtr grid = config.make_grid();
  if (config.ic.kind == IcKind::from_checkpoint && !config.ic.target_hlog_norm) {
    // Keep the stored amplitude.
    const StateCheckpoint cp = read_state_checkpoint(config.ic.checkpoint_path, grid->dealias_fraction());
    return generate_initial_condition(config.ic, grid, config.seed, hlog_norm(cp.omega));
  }
  return generate_initial_condition(config.ic, grid, config.seed, config.target_norm());
}

}  // namespace couette::solver
