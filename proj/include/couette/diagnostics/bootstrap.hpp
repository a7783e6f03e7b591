#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "couette/diagnostics/fit.hpp"
#include "couette/diagnostics/record.hpp"

namespace couette::diagnostics {

enum class BootstrapId {
  B1_v0,          // ||V1_0(t)||_{L2_y} / (||V_in|| + ||log w_in||)
  B2_hlog_decay,  // sup e^(c nu^(1/3)(t - tau)) ||log w_!=(t)|| / ref
  B2_grad,        // nu^(1/2) ||log grad w_!=||_{L2_t} / ref
  B2_dxL1,        // nu^(1/2) ||log dx w_!=||_{L1_t} / ref
  B2_Linf,        // nu^(1/2) ||log w_!=||_{L2_t Linf} / ref
  B3_v2Linf,      // ||V2||_{L2_t Linf} / ref
  B3_v2half,      // || |D_x|^(1/2) log V2 ||_{L2_t L2_x Linf_y} / ref
  B3_dxv1,        // ||log dx V1||_{L2_t L2} / ref
  B4_v1Linf,      // sup ||V1_!=||_Linf / ref
};
inline constexpr std::array<BootstrapId, 9> kBootstrapIds{
    BootstrapId::B1_v0,     BootstrapId::B2_hlog_decay, BootstrapId::B2_grad,
    BootstrapId::B2_dxL1,   BootstrapId::B2_Linf,       BootstrapId::B3_v2Linf,
    BootstrapId::B3_v2half, BootstrapId::B3_dxv1,       BootstrapId::B4_v1Linf};

std::string to_string(BootstrapId id);
BootstrapId bootstrap_id_from_string(const std::string& s);

using BootstrapValues = std::array<double, 9>;

struct BootstrapSnapshot {
  double tau = 0;  // window start, snapped to the first sample at or after the request
  double t_end = 0;
  BootstrapValues quantities{};  // unitless ratios
  double reference_norm = 0;     // ||log w_!=(tau)||
  bool cadence_ok = true;        // >= 8 samples per nu^(-1/3) in the window
  // Running ratios over [tau, times[k]], used to date budget violations.
  std::vector<double> times;
  std::array<std::vector<double>, 9> running;
};

// decay_rate is the c used in B2_hlog_decay (units of nu^(1/3)).
BootstrapSnapshot compute_bootstrap(const DiagnosticsRecord& record, double tau, double t_end,
                                    double decay_rate);

// tau = 0 followed by a geometric grid up to t_end / 2 (ratio 2).
std::vector<double> window_starts(double t_end, int windows);

std::vector<BootstrapSnapshot> bootstrap_history(const DiagnosticsRecord& record, double decay_rate,
                                                 int windows = 16);

// Column-wise maximum over a history.
BootstrapValues max_ratios(const std::vector<BootstrapSnapshot>& history);

using Budgets = std::map<BootstrapId, double>;
// factor times the given linear constants, one per id.
Budgets budgets_from_constants(const BootstrapValues& constants, double factor = 8.0);

enum class RunClass { stable, budget_exceeded, transitioned };
std::string to_string(RunClass c);

struct Classification {
  RunClass kind = RunClass::stable;
  BootstrapId id = BootstrapId::B1_v0;  // meaningful for budget_exceeded
  double time = 0;                      // first violation time
};

// True when ||log w_!=|| has not fallen to half its initial value by
// min(factor nu^(-1/3), end of record). Records shorter than 2 nu^(-1/3)
// are never judged transitioned.
bool failed_to_decay(const DiagnosticsRecord& record, double factor = 10.0);

// transitioned takes precedence; otherwise the earliest budget violation
// across windows, otherwise stable. Ids absent from the budgets are not checked.
Classification classify_run(const std::vector<BootstrapSnapshot>& history, const Budgets& budgets,
                            bool transitioned = false);

nlohmann::json to_json(const RateFit& f);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const BootstrapValues& v);

}  // namespace couette::diagnostics
