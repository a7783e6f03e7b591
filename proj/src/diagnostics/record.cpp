#include "couette/diagnostics/record.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "couette/core/error.hpp"
#include "couette/linear/biot_savart.hpp"
#include "couette/linear/estimates.hpp"
#include "couette/spectral/multipliers.hpp"
#include "couette/spectral/norms.hpp"
#include "couette/spectral/transform.hpp"

namespace couette::diagnostics {

using namespace spectral;

std::vector<double> DiagnosticsRecord::times() const {
  std::vector<double> t;
  t.reserve(samples.size());
  for (const auto& s : samples) t.push_back(s.time);
  return t;
}

std::vector<double> DiagnosticsRecord::nonzero_hlog() const {
  std::vector<double> v;
  v.reserve(samples.size());
  for (const auto& s : samples) v.push_back(s.nonzero.hlog);
  return v;
}

namespace {

// Mean and L2_y norm of the fluctuation of a y-profile.
std::pair<double, double> profile_stats(const GridSpec& g, std::span<const double> v0) {
  double mean = 0;
  for (double v : v0) mean += v;
  mean /= static_cast<double>(v0.size());
  double sq = 0;
  for (double v : v0) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq * g.dy())};
}

}  // namespace

DiagnosticSample sample_state(double time, long step, double dt, const SpectralField& omega,
                              std::span<const double> v0, bool probe_nterms) {
  const GridSpec& g = omega.grid();
  require(v0.size() == static_cast<std::size_t>(g.ny()), "sample_state: v0 length mismatch");
  DiagnosticSample s;
  s.time = time;
  s.step = step;
  s.dt = dt;
  const NormBundle nb = compute_norms(omega);
  s.l2 = nb.l2;
  s.hlog = nb.hlog;
  s.zero_l2 = nb.zero_l2;
  s.grad_l2 = weighted_l2(omega, [](double a, double e) { return std::sqrt(a * a + e * e); });
  s.nonzero = linear::measure_functionals(omega);

  const auto [mean, fluct] = profile_stats(g, v0);
  s.v0_mean = mean;
  s.v0_l2 = fluct;
  const double vn = weighted_l2(project_nonzero(omega), [](double a, double e) {
    return 1.0 / std::sqrt(a * a + e * e);
  });
  s.v_l2 = std::sqrt(vn * vn + 2 * kPi * fluct * fluct);

  const std::vector<Complex> prof = y_profiles(omega);
  const double edge = 0.9 * g.ly();
  double total = 0, outer = 0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double v = std::norm(prof[g.index(i, j)]);
      total += v;
      if (std::abs(g.y(j)) > edge) outer += v;
    }
  s.boundary_fraction = total > 0 ? outer / total : 0.0;
  if (probe_nterms) s.nterms = nonlinear_term_hlog(omega, v0);
  return s;
}

NTermNorms nonlinear_term_hlog(const SpectralField& omega, std::span<const double> v0) {
  const GridSpec& g = omega.grid();
  const GridPtr& gp = omega.grid_ptr();
  const Frame fr = omega.frame();
  const SpectralField wn = project_nonzero(omega);
  const SpectralField wz = project_zero(omega);
  const linear::Velocity vel = linear::biot_savart(wn);

  const std::vector<double> v1 = transform_inverse(vel.v1);
  const std::vector<double> v2 = transform_inverse(vel.v2);
  const std::vector<double> wx = transform_inverse(dx(wn));
  const std::vector<double> wy = transform_inverse(dy(wn));
  const std::vector<double> w0y = transform_inverse(dy(wz));

  std::vector<double> p1(g.size()), p2(g.size()), p3(g.size());
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const std::size_t k = g.index(i, j);
      p1[k] = v1[k] * wx[k] + v2[k] * wy[k];
      p2[k] = v0[j] * wx[k];
      p3[k] = v2[k] * w0y[k];
    }
  auto hlog_of = [&](const std::vector<double>& p, bool nonzero_only) {
    SpectralField f = transform_forward(gp, p, fr);
    f.apply_mask();
    return hlog_norm(nonzero_only ? project_nonzero(f) : f);
  };
  return {hlog_of(p1, true), hlog_of(p2, false), hlog_of(p3, false)};
}

NTermNorms nonlinear_term_norms(const DiagnosticsRecord& record, double t0, double t1) {
  require(t1 > t0, "nonlinear_term_norms: empty window");
  std::vector<double> t, a, b, c;
  for (const auto& s : record.samples) {
    if (s.time < t0 - 1e-12 || s.time > t1 + 1e-12) continue;
    require(s.nterms.has_value(), "nonlinear_term_norms: record lacks N-term snapshots");
    t.push_back(s.time);
    a.push_back(s.nterms->n1);
    b.push_back(s.nterms->n2);
    c.push_back(s.nterms->n3);
  }
  require(t.size() >= 2, "nonlinear_term_norms: fewer than two samples in the window");
  return {linear::integrate_samples(t, a), linear::integrate_samples(t, b), linear::integrate_samples(t, c)};
}

void write_diagnostics_csv(std::ostream& out, const DiagnosticsRecord& record) {
  out << "time,step,dt,l2,hlog,nonzero_hlog,zero_l2,v_l2,v0_l2,v0_mean,v2_linf,v1_linf,grad_l2,"
         "grad_hlog,dx_hlog,log_linf,v2_half_log,v2_half,dx_v1_hlog,dx_v1_l2,boundary_fraction,"
         "remap_loss,n1,n2,n3\n";
  char buf[32];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out << buf;
  };
  for (const auto& s : record.samples) {
    const auto& f = s.nonzero;
    num(s.time);
    out << ',' << s.step << ',';
    for (double x : {s.dt, s.l2, s.hlog, f.hlog, s.zero_l2, s.v_l2, s.v0_l2, s.v0_mean, f.v2_linf, f.v1_linf,
                     s.grad_l2, f.grad_hlog, f.dx_hlog, f.log_linf, f.v2_half_log, f.v2_half, f.dx_v1_hlog,
                     f.dx_v1_l2, s.boundary_fraction, s.remap_loss}) {
      num(x);
      out << ',';
    }
    if (s.nterms) {
      num(s.nterms->n1);
      out << ',';
      num(s.nterms->n2);
      out << ',';
      num(s.nterms->n3);
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

}  // namespace couette::diagnostics
