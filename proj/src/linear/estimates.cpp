#include "couette/linear/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "couette/core/error.hpp"
#include "couette/core/quadrature.hpp"
#include "couette/linear/propagator.hpp"

namespace couette::linear {

std::string estimate_id(LinearQuantity q) {
  switch (q) {
    case LinearQuantity::hlog_decay: return "hlog_decay";
    case LinearQuantity::grad_hlog_l2t: return "grad_hlog_l2t";
    case LinearQuantity::dx_hlog_l1t: return "dx_hlog_l1t";
    case LinearQuantity::log_linf_l2t: return "log_linf_l2t";
    case LinearQuantity::v2_linf_l2t: return "v2_linf_l2t";
    case LinearQuantity::v2_half_log_l2t: return "v2_half_log_l2t";
    case LinearQuantity::dx_v1_hlog_l2t: return "dx_v1_hlog_l2t";
    case LinearQuantity::v1_linf_sup: return "v1_linf_sup";
  }
  return "unknown";
}

bool carries_inverse_sqrt_nu(LinearQuantity q) {
  return q == LinearQuantity::grad_hlog_l2t || q == LinearQuantity::dx_hlog_l1t ||
         q == LinearQuantity::log_linf_l2t;
}

double default_t_max(double nu) { return 20.0 / std::cbrt(nu); }

double integrate_samples(std::span<const double> t, std::span<const double> v) {
  require(t.size() == v.size(), "integrate_samples: length mismatch");
  if (t.size() < 2) return 0.0;
  const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  bool uniform = h > 0;
  for (std::size_t k = 1; k < t.size() && uniform; ++k)
    uniform = std::abs((t[k] - t[k - 1]) - h) <= 1e-9 * h;
  if (uniform) return simpson(v, h);
  double acc = 0;
  for (std::size_t k = 1; k < t.size(); ++k) acc += 0.5 * (t[k] - t[k - 1]) * (v[k] + v[k - 1]);
  return acc;
}

WindowValues integrate_window(std::span<const double> t, std::span<const InstantFunctionals> f,
                              double nu, double decay_rate) {
  require(t.size() == f.size(), "integrate_window: length mismatch");
  WindowValues out{};
  if (t.empty()) return out;
  const std::size_t n = t.size();
  std::vector<double> g(n);
  auto integral = [&](auto&& fn) {
    for (std::size_t k = 0; k < n; ++k) g[k] = fn(f[k]);
    return integrate_samples(t, g);
  };
  auto sq = [](double x) { return x * x; };
  const double rate = decay_rate * std::cbrt(nu);
  std::vector<double> weighted(n), v1(n);
  for (std::size_t k = 0; k < n; ++k) {
    weighted[k] = std::exp(rate * (t[k] - t[0])) * f[k].hlog;
    v1[k] = f[k].v1_linf;
  }
  out[static_cast<int>(LinearQuantity::hlog_decay)] = sampled_sup(t, weighted);
  out[static_cast<int>(LinearQuantity::grad_hlog_l2t)] =
      std::sqrt(integral([&](const InstantFunctionals& x) { return sq(x.grad_hlog); }));
  out[static_cast<int>(LinearQuantity::dx_hlog_l1t)] =
      integral([&](const InstantFunctionals& x) { return x.dx_hlog; });
  out[static_cast<int>(LinearQuantity::log_linf_l2t)] =
      std::sqrt(integral([&](const InstantFunctionals& x) { return sq(x.log_linf); }));
  out[static_cast<int>(LinearQuantity::v2_linf_l2t)] =
      std::sqrt(integral([&](const InstantFunctionals& x) { return sq(x.v2_linf); }));
  out[static_cast<int>(LinearQuantity::v2_half_log_l2t)] =
      std::sqrt(integral([&](const InstantFunctionals& x) { return sq(x.v2_half_log); }));
  out[static_cast<int>(LinearQuantity::dx_v1_hlog_l2t)] =
      std::sqrt(integral([&](const InstantFunctionals& x) { return sq(x.dx_v1_hlog); }));
  out[static_cast<int>(LinearQuantity::v1_linf_sup)] = sampled_sup(t, v1);
  return out;
}

namespace {

// Integrand whose tail decides truncation, per quantity.
double tail_integrand(LinearQuantity q, const InstantFunctionals& x) {
  switch (q) {
    case LinearQuantity::grad_hlog_l2t: return x.grad_hlog * x.grad_hlog;
    case LinearQuantity::dx_hlog_l1t: return x.dx_hlog;
    case LinearQuantity::log_linf_l2t: return x.log_linf * x.log_linf;
    case LinearQuantity::v2_linf_l2t: return x.v2_linf * x.v2_linf;
    case LinearQuantity::v2_half_log_l2t: return x.v2_half_log * x.v2_half_log;
    case LinearQuantity::dx_v1_hlog_l2t: return x.dx_v1_hlog * x.dx_v1_hlog;
    case LinearQuantity::hlog_decay:
    case LinearQuantity::v1_linf_sup: return x.hlog * x.hlog;
  }
  return 0;
}

}  // namespace

std::vector<LinearEstimateReport> reports_from_series(std::span<const double> t,
                                                      std::span<const InstantFunctionals> f,
                                                      double nu, const EstimateOptions& options) {
  require(!t.empty() && t.size() == f.size(), "reports_from_series: empty or mismatched series");
  std::vector<double> hlog(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) hlog[k] = f[k].hlog;
  const auto fit = diagnostics::fit_decay(t, hlog, nu, options.fit);
  const double c = fit.regime == diagnostics::DecayRegime::no_decay ? 0.0 : fit.c_fit;
  const WindowValues values = integrate_window(t, f, nu, c);
  const double rhs = f.front().hlog;

  std::vector<LinearEstimateReport> out;
  for (LinearQuantity q : kLinearQuantities) {
    LinearEstimateReport r;
    r.quantity = q;
    r.nu = nu;
    r.value = values[static_cast<int>(q)];
    r.rhs_norm = rhs;
    const double scale = carries_inverse_sqrt_nu(q) ? 1.0 / std::sqrt(nu) : 1.0;
    r.ratio = rhs > 0 ? r.value / (scale * rhs) : 0.0;
    r.fitted_c = c;
    double peak = 0;
    for (const auto& x : f) peak = std::max(peak, tail_integrand(q, x));
    r.truncated = tail_integrand(q, f.back()) > options.tail_tolerance * peak;
    r.note = "decay regime " + diagnostics::to_string(fit.regime);
    if (r.truncated) r.note += "; integrand tail above tolerance at t_max";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<LinearEstimateReport> evaluate_linear_estimates(const spectral::SpectralField& omega_in,
                                                            double nu, double t_max,
                                                            int quadrature_points,
                                                            const EstimateOptions& options) {
  require(quadrature_points >= 16, "evaluate_linear_estimates: need at least 16 quadrature points");
  require(nu > 0 && std::isfinite(nu), "evaluate_linear_estimates: nu must be positive");
  require(t_max > 0 && std::isfinite(t_max), "evaluate_linear_estimates: t_max must be positive");
  require_mean_free(omega_in);

  std::vector<double> t(quadrature_points);
  std::vector<InstantFunctionals> f(quadrature_points);
  const double h = t_max / (quadrature_points - 1);
  for (int k = 0; k < quadrature_points; ++k) {
    t[k] = k * h;
    f[k] = measure_functionals(propagate(omega_in, {nu, 0.0, t[k]}));
  }
  return reports_from_series(t, f, nu, options);
}

void write_reports_csv(std::ostream& out, std::span<const LinearEstimateReport> reports) {
  out << "estimate_id,nu,value,rhs_norm,ratio,fitted_c,truncation_flag\n";
  out.precision(17);
  for (const auto& r : reports)
    out << estimate_id(r.quantity) << ',' << r.nu << ',' << r.value << ',' << r.rhs_norm << ','
        << r.ratio << ',' << r.fitted_c << ',' << (r.truncated ? 1 : 0) << '\n';
}

}  // namespace couette::linear
