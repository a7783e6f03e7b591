#include "couette/diagnostics/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "couette/core/error.hpp"
#include "couette/linear/estimates.hpp"

namespace couette::diagnostics {

using linear::LinearQuantity;

std::string to_string(BootstrapId id) {
  switch (id) {
    case BootstrapId::B1_v0: return "B1_v0";
    case BootstrapId::B2_hlog_decay: return "B2_hlog_decay";
    case BootstrapId::B2_grad: return "B2_grad";
    case BootstrapId::B2_dxL1: return "B2_dxL1";
    case BootstrapId::B2_Linf: return "B2_Linf";
    case BootstrapId::B3_v2Linf: return "B3_v2Linf";
    case BootstrapId::B3_v2half: return "B3_v2half";
    case BootstrapId::B3_dxv1: return "B3_dxv1";
    case BootstrapId::B4_v1Linf: return "B4_v1Linf";
  }
  return "unknown";
}

BootstrapId bootstrap_id_from_string(const std::string& s) {
  for (BootstrapId id : kBootstrapIds)
    if (to_string(id) == s) return id;
  throw InvalidArgument("unknown bootstrap id: " + s);
}

std::string to_string(RunClass c) {
  switch (c) {
    case RunClass::stable: return "stable";
    case RunClass::budget_exceeded: return "budget_exceeded";
    case RunClass::transitioned: return "transitioned";
  }
  return "unknown";
}

namespace {

constexpr int idx(BootstrapId id) { return static_cast<int>(id); }
constexpr int lq(LinearQuantity q) { return static_cast<int>(q); }

}  // namespace

BootstrapSnapshot compute_bootstrap(const DiagnosticsRecord& record, double tau, double t_end,
                                    double decay_rate) {
  require(tau < t_end, "compute_bootstrap: tau must be < T");
  require(!record.samples.empty(), "compute_bootstrap: empty record");
  const double nu = record.nu;
  require(nu > 0, "compute_bootstrap: record has no viscosity");
  const auto& ss = record.samples;
  const double eps = 1e-9 * std::max(1.0, t_end);

  std::size_t k0 = 0;
  while (k0 < ss.size() && ss[k0].time < tau - eps) ++k0;
  std::size_t k1 = k0;
  while (k1 + 1 < ss.size() && ss[k1 + 1].time <= t_end + eps) ++k1;
  require(k0 < ss.size() && k1 > k0, "compute_bootstrap: window outside the recorded horizon");

  BootstrapSnapshot snap;
  snap.tau = ss[k0].time;
  snap.t_end = ss[k1].time;
  const std::size_t n = k1 - k0 + 1;
  std::vector<double> t(n);
  std::vector<linear::InstantFunctionals> f(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = ss[k0 + k].time;
    f[k] = ss[k0 + k].nonzero;
  }
  const double unit = 1.0 / std::cbrt(nu);
  for (std::size_t k = 1; k < n; ++k)
    if (t[k] - t[k - 1] > unit / 8 * (1 + 1e-9)) snap.cadence_ok = false;

  const double ref = f[0].hlog;
  snap.reference_norm = ref;
  snap.times = t;
  for (auto& r : snap.running) r.assign(n, 0.0);
  const double norm0 = ss.front().v_l2 + ss.front().hlog;
  if (ref <= 0) return snap;

  const double sn = std::sqrt(nu);
  const linear::WindowValues w = linear::integrate_window(t, f, nu, decay_rate);
  BootstrapValues& q = snap.quantities;
  double v0max = 0;
  for (std::size_t k = k0; k <= k1; ++k) v0max = std::max(v0max, ss[k].v0_l2);
  q[idx(BootstrapId::B1_v0)] = norm0 > 0 ? v0max / norm0 : 0.0;
  q[idx(BootstrapId::B2_hlog_decay)] = w[lq(LinearQuantity::hlog_decay)] / ref;
  q[idx(BootstrapId::B2_grad)] = sn * w[lq(LinearQuantity::grad_hlog_l2t)] / ref;
  q[idx(BootstrapId::B2_dxL1)] = sn * w[lq(LinearQuantity::dx_hlog_l1t)] / ref;
  q[idx(BootstrapId::B2_Linf)] = sn * w[lq(LinearQuantity::log_linf_l2t)] / ref;
  q[idx(BootstrapId::B3_v2Linf)] = w[lq(LinearQuantity::v2_linf_l2t)] / ref;
  q[idx(BootstrapId::B3_v2half)] = w[lq(LinearQuantity::v2_half_log_l2t)] / ref;
  q[idx(BootstrapId::B3_dxv1)] = w[lq(LinearQuantity::dx_v1_hlog_l2t)] / ref;
  q[idx(BootstrapId::B4_v1Linf)] = w[lq(LinearQuantity::v1_linf_sup)] / ref;

  // Running values, trapezoid in time.
  const double rate = decay_rate * std::cbrt(nu);
  std::array<double, 9> acc{};
  auto sq = [](double x) { return x * x; };
  auto integrands = [&](const linear::InstantFunctionals& x) {
    std::array<double, 9> g{};
    g[idx(BootstrapId::B2_grad)] = sq(x.grad_hlog);
    g[idx(BootstrapId::B2_dxL1)] = x.dx_hlog;
    g[idx(BootstrapId::B2_Linf)] = sq(x.log_linf);
    g[idx(BootstrapId::B3_v2Linf)] = sq(x.v2_linf);
    g[idx(BootstrapId::B3_v2half)] = sq(x.v2_half_log);
    g[idx(BootstrapId::B3_dxv1)] = sq(x.dx_v1_hlog);
    return g;
  };
  double sup_decay = 0, sup_v1 = 0, sup_v0 = 0;
  std::array<double, 9> prev = integrands(f[0]);
  for (std::size_t k = 0; k < n; ++k) {
    const std::array<double, 9> g = integrands(f[k]);
    if (k > 0)
      for (int m = 0; m < 9; ++m) acc[m] += 0.5 * (t[k] - t[k - 1]) * (g[m] + prev[m]);
    prev = g;
    sup_decay = std::max(sup_decay, std::exp(rate * (t[k] - t[0])) * f[k].hlog);
    sup_v1 = std::max(sup_v1, f[k].v1_linf);
    sup_v0 = std::max(sup_v0, ss[k0 + k].v0_l2);
    auto& r = snap.running;
    r[idx(BootstrapId::B1_v0)][k] = norm0 > 0 ? sup_v0 / norm0 : 0.0;
    r[idx(BootstrapId::B2_hlog_decay)][k] = sup_decay / ref;
    r[idx(BootstrapId::B2_grad)][k] = sn * std::sqrt(acc[idx(BootstrapId::B2_grad)]) / ref;
    r[idx(BootstrapId::B2_dxL1)][k] = sn * acc[idx(BootstrapId::B2_dxL1)] / ref;
    r[idx(BootstrapId::B2_Linf)][k] = sn * std::sqrt(acc[idx(BootstrapId::B2_Linf)]) / ref;
    r[idx(BootstrapId::B3_v2Linf)][k] = std::sqrt(acc[idx(BootstrapId::B3_v2Linf)]) / ref;
    r[idx(BootstrapId::B3_v2half)][k] = std::sqrt(acc[idx(BootstrapId::B3_v2half)]) / ref;
    r[idx(BootstrapId::B3_dxv1)][k] = std::sqrt(acc[idx(BootstrapId::B3_dxv1)]) / ref;
    r[idx(BootstrapId::B4_v1Linf)][k] = sup_v1 / ref;
  }
  return snap;
}

std::vector<double> window_starts(double t_end, int windows) {
  require(windows >= 1, "window_starts: need at least one window");
  require(t_end > 0, "window_starts: T must be positive");
  std::vector<double> out{0.0};
  for (int k = 1; k < windows; ++k) out.push_back(0.5 * t_end * std::ldexp(1.0, -(windows - 1 - k)));
  return out;
}

std::vector<BootstrapSnapshot> bootstrap_history(const DiagnosticsRecord& record, double decay_rate,
                                                 int windows) {
  require(record.samples.size() >= 2, "bootstrap_history: need at least two samples");
  const double t_end = record.samples.back().time;
  const std::vector<double> taus = window_starts(t_end, windows);
  // Windows are independent; evaluate them concurrently, keep the tau order.
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  std::vector<BootstrapSnapshot> all(taus.size());
  for (std::size_t b = 0; b < taus.size(); b += width) {
    std::vector<std::future<BootstrapSnapshot>> jobs;
    for (std::size_t k = b; k < std::min(taus.size(), b + width); ++k)
      jobs.push_back(std::async(std::launch::async, [&, k] {
        return compute_bootstrap(record, taus[k], t_end, decay_rate);
      }));
    for (std::size_t k = 0; k < jobs.size(); ++k) all[b + k] = jobs[k].get();
  }
  std::vector<BootstrapSnapshot> out;
  double last_tau = -1;
  for (auto& s : all) {
    if (s.tau == last_tau) continue;  // two requests snapped to the same sample
    last_tau = s.tau;
    out.push_back(std::move(s));
  }
  return out;
}

BootstrapValues max_ratios(const std::vector<BootstrapSnapshot>& history) {
  BootstrapValues m{};
  for (const auto& s : history)
    for (int k = 0; k < 9; ++k) m[k] = std::max(m[k], s.quantities[k]);
  return m;
}

Budgets budgets_from_constants(const BootstrapValues& constants, double factor) {
  Budgets b;
  for (BootstrapId id : kBootstrapIds) b[id] = factor * constants[idx(id)];
  return b;
}

bool failed_to_decay(const DiagnosticsRecord& record, double factor) {
  if (record.samples.size() < 2 || !(record.nu > 0)) return false;
  const double unit = 1.0 / std::cbrt(record.nu);
  const auto& ss = record.samples;
  if (ss.back().time < 2 * unit * (1 - 1e-9)) return false;
  const double h0 = ss.front().nonzero.hlog;
  if (!(h0 > 0)) return false;
  const double t_check = std::min(factor * unit, ss.back().time);
  double h = h0;
  for (const auto& s : ss) {
    if (s.time > t_check * (1 + 1e-12)) break;
    h = s.nonzero.hlog;
  }
  return !(h <= 0.5 * h0);
}

Classification classify_run(const std::vector<BootstrapSnapshot>& history, const Budgets& budgets,
                            bool transitioned) {
  require(!history.empty(), "classify_run: empty history");
  Classification c;
  if (transitioned) {
    c.kind = RunClass::transitioned;
    c.time = history.front().t_end;
    return c;
  }
  double first = std::numeric_limits<double>::infinity();
  for (const auto& s : history) {
    for (const auto& [id, budget] : budgets) {
      const int m = idx(id);
      if (!(s.quantities[m] > budget)) continue;
      double when = s.t_end;
      const auto& r = s.running[m];
      for (std::size_t k = 0; k < r.size(); ++k)
        if (r[k] > budget) {
          when = s.times[k];
          break;
        }
      if (when < first) {
        first = when;
        c.kind = RunClass::budget_exceeded;
        c.id = id;
        c.time = when;
      }
    }
  }
  return c;
}

nlohmann::json to_json(const RateFit& f) {
  auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); };
  return {{"c_fit", num(f.c_fit)},         {"prefactor", num(f.prefactor)}, {"t0", f.t0},
          {"t1", f.t1},                    {"residual", num(f.residual)},   {"half_life", num(f.half_life)},
          {"regime", to_string(f.regime)}, {"points", f.points},            {"refused", f.refused()}};
}

nlohmann::json to_json(const Classification& c) {
  nlohmann::json j = {{"kind", to_string(c.kind)}};
  if (c.kind == RunClass::budget_exceeded) {
    j["id"] = to_string(c.id);
    j["time"] = c.time;
  }
  return j;
}

nlohmann::json to_json(const BootstrapValues& v) {
  nlohmann::json j = nlohmann::json::object();
  for (BootstrapId id : kBootstrapIds) j[to_string(id)] = v[idx(id)];
  return j;
}

}  // namespace couette::diagnostics
