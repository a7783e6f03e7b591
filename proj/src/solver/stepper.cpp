#include "couette/solver/stepper.hpp"

#include <algorithm>
#include <cmath>

#include "couette/linear/propagator.hpp"
#include "couette/spectral/fft.hpp"
#include "couette/spectral/norms.hpp"
#include "couette/spectral/reframe.hpp"
#include "couette/spectral/transform.hpp"

namespace couette::solver {

using namespace spectral;

namespace {

constexpr Complex I{0, 1};

std::vector<Complex> v0_coefficients(const GridSpec& g, std::span<const double> v0) {
  std::vector<Complex> z = forward_y(g, v0);
  for (int j = 0; j < g.ny(); ++j)
    if (!g.eta_kept(j)) z[j] = 0;
  return z;
}

void to_physical(std::vector<Complex>& b, int nx, int ny) {
  y_origin_phase(b, nx, ny);
  fft::transform_2d(b, nx, ny, fft::Direction::backward);
}

// exp(-E) over [s, s + h/2] and [s + h/2, s + h] for every kept slot, with the
// effective wavenumber at the start of each half.
struct Factors {
  std::vector<double> first, second, full;
};

Factors make_factors(const GridSpec& g, double s, double nu, double h) {
  Factors f;
  f.first.assign(g.size(), 0.0);
  f.second.assign(g.size(), 0.0);
  f.full.assign(g.size(), 0.0);
  const double h2 = 0.5 * h;
  for (int i = 0; i < g.nx(); ++i) {
    const double a = g.alpha(i);
    for (int j = 0; j < g.ny(); ++j) {
      if (!g.kept(i, j)) continue;
      const double e = g.eta(j) - a * s;
      const std::size_t k = g.index(i, j);
      f.first[k] = std::exp(-linear::shear_diffusion_exponent(a, e, nu, h2));
      f.second[k] = std::exp(-linear::shear_diffusion_exponent(a, e - a * h2, nu, h2));
      f.full[k] = f.first[k] * f.second[k];
    }
  }
  return f;
}

}  // namespace

NonlinearEval nonlinear_term(const SpectralField& w, std::span<const Complex> v0_hat) {
  const GridSpec& g = w.grid();
  const int nx = g.nx(), ny = g.ny();
  const std::size_t n = g.size();
  const double s = w.frame().offset();
  require(v0_hat.size() == static_cast<std::size_t>(ny), "nonlinear_term: v0 length mismatch");

  std::vector<Complex> u1(n), u2(n), wx(n), wy(n);
  for (int i = 0; i < nx; ++i) {
    const double a = g.alpha(i);
    for (int j = 0; j < ny; ++j) {
      if (!g.kept(i, j)) continue;
      const Complex c = w(i, j);
      if (c == Complex{}) continue;
      const double e = w.effective_eta(i, j);
      const std::size_t k = g.index(i, j);
      wx[k] = I * a * c;
      wy[k] = I * e * c;
      if (a != 0) {
        const Complex psi = c / (a * a + e * e);
        u1[k] = I * e * psi;
        u2[k] = -I * a * psi;
      }
    }
  }
  const int a0 = g.alpha_index(0);
  for (int j = 0; j < ny; ++j)
    if (g.eta_kept(j)) u1[g.index(a0, j)] += v0_hat[j];

  to_physical(u1, nx, ny);
  to_physical(u2, nx, ny);
  to_physical(wx, nx, ny);
  to_physical(wy, nx, ny);

  std::vector<Complex> p(n);
  std::vector<double> q(ny, 0.0);
  double m1 = 0, m2 = 0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const std::size_t k = g.index(i, j);
      const double v1 = u1[k].real(), v2 = u2[k].real();
      p[k] = -(v1 * wx[k].real() + v2 * wy[k].real());
      q[j] += v1 * v2;
      m1 = std::max(m1, std::abs(v1 - s * v2));
      m2 = std::max(m2, std::abs(v2));
    }
  }
  fft::transform_2d(p, nx, ny, fft::Direction::forward);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& c : p) c *= scale;
  y_origin_phase(p, nx, ny);

  NonlinearEval out{SpectralField(w.grid_ptr(), std::move(p), w.frame()), {}, 0.0};
  out.rhs.apply_mask();
  out.rhs.enforce_hermitian();

  for (double& x : q) x /= nx;
  const std::vector<Complex> qh = forward_y(g, q);
  out.v0_forcing.assign(ny, Complex{});
  for (int j = 0; j < ny; ++j)
    if (g.eta_kept(j)) out.v0_forcing[j] = -I * g.eta(j) * qh[j];
  out.cfl_rate = m1 * g.alpha_cut() + m2 * g.eta_cut();
  return out;
}

double gradient_sq(const SpectralField& omega) {
  const double r = weighted_l2(omega, [](double a, double e) { return std::sqrt(a * a + e * e); });
  return r * r;
}

TrajectoryState make_initial_state(const SimConfig& config, InitialData data) {
  TrajectoryState st;
  st.omega = std::move(data.omega);
  if (st.omega.frame().kind == FrameKind::stationary) st.omega.set_frame(Frame::sheared(0));
  st.v0 = std::move(data.v0);
  st.dt = config.dt;
  st.functionals = linear::measure_functionals(st.omega);
  st.grad_sq = gradient_sq(st.omega);
  return st;
}

TrajectoryState step(const TrajectoryState& st, const SimConfig& config, std::optional<double> h_in) {
  const GridSpec& g = st.omega.grid();
  const std::size_t n = g.size();
  const int ny = g.ny();
  const double s = st.omega.frame().offset();
  if (!st.omega.is_finite()) throw StepFailure("step: non-finite input state", st);

  double h = h_in.value_or(st.dt);
  require(h > 0, "step: h must be > 0");
  double dt_next = st.dt;

  const std::vector<Complex> z0 = v0_coefficients(g, st.v0);
  auto evaluate = [&](const SpectralField& w, std::span<const Complex> z) {
    if (config.nonlinear) return nonlinear_term(w, z);
    return NonlinearEval{SpectralField(w.grid_ptr(), w.frame()), std::vector<Complex>(ny), 0.0};
  };

  const NonlinearEval k1 = evaluate(st.omega, z0);
  while (k1.cfl_rate * h > config.cfl_max) {
    if (config.cfl_policy == CflPolicy::abort)
      throw StepFailure("step: CFL number " + std::to_string(k1.cfl_rate * h) + " exceeds the limit", st);
    h *= 0.5;
    dt_next = std::min(dt_next, h);
    if (h < config.dt * 1e-6) throw StepFailure("step: CFL reduction drove dt to zero", st);
  }

  const Factors E = make_factors(g, s, config.nu, h);
  const int a0 = g.alpha_index(0);
  auto zf = [&](const std::vector<double>& f, int j) { return f[g.index(a0, j)]; };
  const double h2 = 0.5 * h;
  const auto w0 = st.omega.coeffs();

  SpectralField wa(st.omega.grid_ptr(), Frame::sheared(s + h2));
  std::vector<Complex> za(ny);
  for (std::size_t k = 0; k < n; ++k) wa.coeffs()[k] = E.first[k] * (w0[k] + h2 * k1.rhs.coeffs()[k]);
  for (int j = 0; j < ny; ++j) za[j] = zf(E.first, j) * (z0[j] + h2 * k1.v0_forcing[j]);
  const NonlinearEval k2 = evaluate(wa, za);

  SpectralField wb(st.omega.grid_ptr(), Frame::sheared(s + h2));
  std::vector<Complex> zb(ny);
  for (std::size_t k = 0; k < n; ++k) wb.coeffs()[k] = E.first[k] * w0[k] + h2 * k2.rhs.coeffs()[k];
  for (int j = 0; j < ny; ++j) zb[j] = zf(E.first, j) * z0[j] + h2 * k2.v0_forcing[j];
  const NonlinearEval k3 = evaluate(wb, zb);

  SpectralField wc(st.omega.grid_ptr(), Frame::sheared(s + h));
  std::vector<Complex> zc(ny);
  for (std::size_t k = 0; k < n; ++k) wc.coeffs()[k] = E.full[k] * w0[k] + h * E.second[k] * k3.rhs.coeffs()[k];
  for (int j = 0; j < ny; ++j) zc[j] = zf(E.full, j) * z0[j] + h * zf(E.second, j) * k3.v0_forcing[j];
  const NonlinearEval k4 = evaluate(wc, zc);

  TrajectoryState out;
  out.omega = SpectralField(st.omega.grid_ptr(), Frame::sheared(s + h));
  auto wn = out.omega.coeffs();
  const double h6 = h / 6.0;
  for (std::size_t k = 0; k < n; ++k) {
    wn[k] = E.full[k] * (w0[k] + h6 * k1.rhs.coeffs()[k]) +
            h6 * (2.0 * E.second[k] * (k2.rhs.coeffs()[k] + k3.rhs.coeffs()[k]) + k4.rhs.coeffs()[k]);
  }
  std::vector<Complex> zn(ny);
  for (int j = 0; j < ny; ++j) {
    zn[j] = zf(E.full, j) * (z0[j] + h6 * k1.v0_forcing[j]) +
            h6 * (2.0 * zf(E.second, j) * (k2.v0_forcing[j] + k3.v0_forcing[j]) + k4.v0_forcing[j]);
  }

  if (!out.omega.is_finite()) throw StepFailure("step: NaN or Inf in vorticity", st);
  out.v0 = inverse_y(g, zn);
  for (double v : out.v0)
    if (!std::isfinite(v)) throw StepFailure("step: NaN or Inf in v0", st);

  out.time = st.time + h;
  out.step_count = st.step_count + 1;
  out.dt = dt_next;
  out.functionals = linear::measure_functionals(out.omega);
  out.grad_sq = gradient_sq(out.omega);

  const auto& f0 = st.functionals;
  const auto& f1 = out.functionals;
  auto trap = [h2](double a, double b) { return h2 * (a + b); };
  auto sq = [](double x) { return x * x; };
  Accumulators acc = st.acc;
  acc.grad_sq += trap(st.grad_sq, out.grad_sq);
  acc.grad_hlog_sq += trap(sq(f0.grad_hlog), sq(f1.grad_hlog));
  acc.dx_hlog += trap(f0.dx_hlog, f1.dx_hlog);
  acc.log_linf_sq += trap(sq(f0.log_linf), sq(f1.log_linf));
  acc.v2_linf_sq += trap(sq(f0.v2_linf), sq(f1.v2_linf));
  acc.v2_half_log_sq += trap(sq(f0.v2_half_log), sq(f1.v2_half_log));
  acc.v2_half_sq += trap(sq(f0.v2_half), sq(f1.v2_half));
  acc.dx_v1_hlog_sq += trap(sq(f0.dx_v1_hlog), sq(f1.dx_v1_hlog));
  acc.dx_v1_sq += trap(sq(f0.dx_v1_l2), sq(f1.dx_v1_l2));
  out.acc = acc;
  return out;
}

TrajectoryState remap(const TrajectoryState& st, const SimConfig& config) {
  ReframeResult r = reframe(st.omega, 0.0);
  if (r.lost_fraction > config.remap_loss_bound)
    throw StepFailure("remap: truncated enstrophy fraction " + std::to_string(r.lost_fraction) +
                          " exceeds the bound",
                      st);
  TrajectoryState out = st;
  out.omega = std::move(r.field);
  out.acc.remap_loss += r.lost_fraction;
  return out;
}

}  // namespace couette::solver
