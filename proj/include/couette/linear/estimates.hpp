#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "couette/diagnostics/fit.hpp"
#include "couette/linear/functionals.hpp"

namespace couette::linear {

enum class LinearQuantity {
  hlog_decay,       // sup_t e^(c nu^(1/3) t) ||w(t)||_Hlog
  grad_hlog_l2t,    // ||grad w||_{L2_t Hlog}
  dx_hlog_l1t,      // ||dx w||_{L1_t Hlog}
  log_linf_l2t,     // ||log w||_{L2_t Linf}
  v2_linf_l2t,      // ||dx psi||_{L2_t Linf}
  v2_half_log_l2t,  // || |D_x|^(1/2) log dx psi ||_{L2_t L2_x Linf_y}
  dx_v1_hlog_l2t,   // ||dy dx psi||_{L2_t Hlog}
  v1_linf_sup,      // sup_t ||dy psi||_Linf
};
inline constexpr std::array<LinearQuantity, 8> kLinearQuantities{
    LinearQuantity::hlog_decay,    LinearQuantity::grad_hlog_l2t,   LinearQuantity::dx_hlog_l1t,
    LinearQuantity::log_linf_l2t,  LinearQuantity::v2_linf_l2t,     LinearQuantity::v2_half_log_l2t,
    LinearQuantity::dx_v1_hlog_l2t, LinearQuantity::v1_linf_sup};

std::string estimate_id(LinearQuantity q);
// True for the three quantities whose bound carries nu^(-1/2).
bool carries_inverse_sqrt_nu(LinearQuantity q);

// Time integrals and suprema of the functionals over one window, raw (no
// normalization). Indexed by LinearQuantity.
using WindowValues = std::array<double, 8>;

// t must be increasing; uniform spacing uses Simpson, otherwise trapezoid.
// decay_rate is the fitted c, applied as e^(c nu^(1/3) (t - t.front())).
WindowValues integrate_window(std::span<const double> t, std::span<const InstantFunctionals> f,
                              double nu, double decay_rate);
double integrate_samples(std::span<const double> t, std::span<const double> v);

struct LinearEstimateReport {
  LinearQuantity quantity{};
  double nu = 0;
  double value = 0;
  double rhs_norm = 0;
  double ratio = 0;
  double fitted_c = 0;
  bool truncated = false;
  std::string note;
};

struct EstimateOptions {
  diagnostics::FitOptions fit;
  double tail_tolerance = 1e-10;
};

double default_t_max(double nu);

std::vector<LinearEstimateReport> evaluate_linear_estimates(const spectral::SpectralField& omega_in,
                                                            double nu, double t_max,
                                                            int quadrature_points,
                                                            const EstimateOptions& options = {});

// Shared by evaluate_linear_estimates and trajectory post-processing.
std::vector<LinearEstimateReport> reports_from_series(std::span<const double> t,
                                                      std::span<const InstantFunctionals> f,
                                                      double nu,
                                                      const EstimateOptions& options = {});

void write_reports_csv(std::ostream& out, std::span<const LinearEstimateReport> reports);

}  // namespace couette::linear
