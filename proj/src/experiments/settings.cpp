#include "couette/experiments/settings.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "couette/core/error.hpp"

namespace couette::experiments {

namespace pt = boost::property_tree;

std::string to_string(PlanKind k) {
  switch (k) {
    case PlanKind::halflife_sweep: return "halflife_sweep";
    case PlanKind::threshold_scan: return "threshold_scan";
    case PlanKind::linear_constants: return "linear_constants";
    case PlanKind::regularization_check: return "regularization_check";
    case PlanKind::lp_suite: return "lp_suite";
  }
  return "unknown";
}

PlanKind plan_kind_from_string(const std::string& s) {
  for (auto k : {PlanKind::halflife_sweep, PlanKind::threshold_scan, PlanKind::linear_constants,
                 PlanKind::regularization_check, PlanKind::lp_suite})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown plan kind: " + s);
}

void ExperimentPlan::validate() const {
  require(!scan_id.empty() && scan_id.find('/') == std::string::npos, "plan: scan_id must be a plain name");
  require(windows >= 1, "plan: windows must be >= 1");
  require(budget_factor > 0, "plan: budget_factor must be > 0");
  require(horizon >= 0, "plan: horizon must be >= 0");
  require(tail_tolerance > 0, "plan: tail_tolerance must be > 0");
  if (kind == PlanKind::lp_suite) {
    require(lp_samples >= 1, "plan: lp_samples must be >= 1");
    return;
  }
  require(!nus.empty() && !seeds.empty(), "plan: the parameter grid is empty");
  for (double nu : nus) require(nu > 0 && nu < 1, "plan: every nu must lie in (0,1)");
  if (kind == PlanKind::threshold_scan)
    require(!betas.empty() && !epsilons.empty(), "plan: the parameter grid is empty");
  for (double e : epsilons) require(e > 0, "plan: epsilon0 values must be > 0");
  if (kind == PlanKind::regularization_check) {
    require(reg_horizon > 0, "plan: reg_horizon must be > 0");
    for (double e : reg_exponents) require(e > 0 && e < 1, "plan: reg_exponents must lie in (0,1)");
  }
}

std::size_t ExperimentPlan::total_runs() const {
  switch (kind) {
    case PlanKind::halflife_sweep:
    case PlanKind::linear_constants: return nus.size() * seeds.size();
    case PlanKind::threshold_scan: return nus.size() * betas.size() * epsilons.size() * seeds.size();
    case PlanKind::regularization_check: return nus.size() * seeds.size() * (1 + reg_exponents.size());
    case PlanKind::lp_suite: return 7;
  }
  return 0;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw InvalidArgument("config: " + key + ": not a number: '" + s + "'");
  return v;
}

long long parse_int(const std::string& key, const std::string& s) {
  long long v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw InvalidArgument("config: " + key + ": not an integer: '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& s) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw InvalidArgument("config: " + key + ": not a non-negative integer: '" + s + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw InvalidArgument("config: " + key + ": not a boolean: '" + s + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  boost::split(parts, s, boost::is_any_of(","));
  for (auto& p : parts) boost::trim(p);
  if (parts.size() == 1 && parts[0].empty()) parts.clear();
  return parts;
}

std::vector<double> parse_doubles(const std::string& key, const std::string& s) {
  std::vector<double> out;
  for (const auto& p : split_list(s)) out.push_back(parse_double(key, p));
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_floating_point_v<T>)
      out += format_double(v[i]);
    else
      out += std::to_string(v[i]);
  }
  return out;
}

struct Field {
  const char* section;
  const char* key;
  std::function<void(ExperimentPlan&, const std::string&, const std::string&)> set;
  std::function<std::string(const ExperimentPlan&)> get;
};

#define DOUBLE_FIELD(sec, name, expr)                                                                  \
  Field{sec, #name, [](ExperimentPlan& p, const std::string& k, const std::string& v) { expr = parse_double(k, v); }, \
        [](const ExperimentPlan& p) { return format_double(expr); }}
#define INT_FIELD(sec, name, expr)                                                                     \
  Field{sec, #name,                                                                                    \
        [](ExperimentPlan& p, const std::string& k, const std::string& v) {                           \
          expr = static_cast<std::decay_t<decltype(expr)>>(parse_int(k, v));                           \
        },                                                                                             \
        [](const ExperimentPlan& p) { return std::to_string(expr); }}
#define BOOL_FIELD(sec, name, expr)                                                                    \
  Field{sec, #name, [](ExperimentPlan& p, const std::string& k, const std::string& v) { expr = parse_bool(k, v); }, \
        [](const ExperimentPlan& p) { return std::string(expr ? "true" : "false"); }}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      DOUBLE_FIELD("sim", nu, p.base.nu),
      DOUBLE_FIELD("sim", beta, p.base.beta),
      DOUBLE_FIELD("sim", epsilon0, p.base.epsilon0),
      DOUBLE_FIELD("sim", dt, p.base.dt),
      DOUBLE_FIELD("sim", t_final, p.base.t_final),
      DOUBLE_FIELD("sim", remap_interval, p.base.remap_interval),
      INT_FIELD("sim", nx, p.base.nx),
      INT_FIELD("sim", ny, p.base.ny),
      DOUBLE_FIELD("sim", ly, p.base.ly),
      DOUBLE_FIELD("sim", dealias_fraction, p.base.dealias_fraction),
      Field{"sim", "seed",
            [](ExperimentPlan& p, const std::string& k, const std::string& v) { p.base.seed = parse_u64(k, v); },
            [](const ExperimentPlan& p) { return std::to_string(p.base.seed); }},
      BOOL_FIELD("sim", nonlinear, p.base.nonlinear),
      DOUBLE_FIELD("sim", remap_loss_bound, p.base.remap_loss_bound),
      DOUBLE_FIELD("sim", cfl_max, p.base.cfl_max),
      Field{"sim", "cfl_policy",
            [](ExperimentPlan& p, const std::string& k, const std::string& v) {
              if (v == "reduce")
                p.base.cfl_policy = solver::CflPolicy::reduce;
              else if (v == "abort")
                p.base.cfl_policy = solver::CflPolicy::abort;
              else
                throw InvalidArgument("config: " + k + ": expected reduce or abort");
            },
            [](const ExperimentPlan& p) {
              return std::string(p.base.cfl_policy == solver::CflPolicy::reduce ? "reduce" : "abort");
            }},
      DOUBLE_FIELD("sim", record_interval, p.base.record_interval),
      DOUBLE_FIELD("sim", boundary_fraction_limit, p.base.boundary_fraction_limit),
      BOOL_FIELD("sim", boundary_monitor, p.base.boundary_monitor),
      BOOL_FIELD("sim", probe_nonlinear_terms, p.base.probe_nonlinear_terms),

      Field{"ic", "kind",
            [](ExperimentPlan& p, const std::string&, const std::string& v) {
              p.base.ic.kind = solver::ic_kind_from_string(v);
            },
            [](const ExperimentPlan& p) { return solver::to_string(p.base.ic.kind); }},
      INT_FIELD("ic", alpha_min, p.base.ic.alpha_min),
      INT_FIELD("ic", alpha_max, p.base.ic.alpha_max),
      DOUBLE_FIELD("ic", eta_max, p.base.ic.eta_max),
      DOUBLE_FIELD("ic", envelope_width, p.base.ic.envelope_width),
      INT_FIELD("ic", mode_alpha, p.base.ic.mode_alpha),
      DOUBLE_FIELD("ic", mode_eta, p.base.ic.mode_eta),
      Field{"ic", "checkpoint_path",
            [](ExperimentPlan& p, const std::string&, const std::string& v) { p.base.ic.checkpoint_path = v; },
            [](const ExperimentPlan& p) { return p.base.ic.checkpoint_path; }},
      Field{"ic", "target_hlog_norm",
            [](ExperimentPlan& p, const std::string& k, const std::string& v) {
              if (v.empty() || v == "none")
                p.base.ic.target_hlog_norm.reset();
              else
                p.base.ic.target_hlog_norm = parse_double(k, v);
            },
            [](const ExperimentPlan& p) {
              return p.base.ic.target_hlog_norm ? format_double(*p.base.ic.target_hlog_norm) : std::string("none");
            }},
      DOUBLE_FIELD("ic", zero_mode_amplitude, p.base.ic.zero_mode_amplitude),
      DOUBLE_FIELD("ic", zero_mode_width, p.base.ic.zero_mode_width),
      DOUBLE_FIELD("ic", galilean_mean, p.base.ic.galilean_mean),

      Field{"plan", "kind",
            [](ExperimentPlan& p, const std::string&, const std::string& v) { p.kind = plan_kind_from_string(v); },
            [](const ExperimentPlan& p) { return to_string(p.kind); }},
      Field{"plan", "nus", [](ExperimentPlan& p, const std::string& k, const std::string& v) { p.nus = parse_doubles(k, v); },
            [](const ExperimentPlan& p) { return join(p.nus); }},
      Field{"plan", "betas",
            [](ExperimentPlan& p, const std::string& k, const std::string& v) { p.betas = parse_doubles(k, v); },
            [](const ExperimentPlan& p) { return join(p.betas); }},
      Field{"plan", "epsilons",
            [](ExperimentPlan& p, const std::string& k, const std::string& v) { p.epsilons = parse_doubles(k, v); },
            [](const ExperimentPlan& p) { return join(p.epsilons); }},
      Field{"plan", "seeds",
            [](ExperimentPlan& p, const std::string& k, const std::string& v) {
              p.seeds.clear();
              for (const auto& s : split_list(v)) p.seeds.push_back(parse_u64(k, s));
            },
            [](const ExperimentPlan& p) { return join(p.seeds); }},
      Field{"plan", "scan_id", [](ExperimentPlan& p, const std::string&, const std::string& v) { p.scan_id = v; },
            [](const ExperimentPlan& p) { return p.scan_id; }},
      DOUBLE_FIELD("plan", horizon, p.horizon),
      BOOL_FIELD("plan", auto_resolution, p.auto_resolution),
      INT_FIELD("plan", windows, p.windows),
      DOUBLE_FIELD("plan", budget_factor, p.budget_factor),
      DOUBLE_FIELD("plan", tail_tolerance, p.tail_tolerance),
      Field{"plan", "reg_exponents",
            [](ExperimentPlan& p, const std::string& k, const std::string& v) { p.reg_exponents = parse_doubles(k, v); },
            [](const ExperimentPlan& p) { return join(p.reg_exponents); }},
      DOUBLE_FIELD("plan", reg_horizon, p.reg_horizon),
      INT_FIELD("plan", lp_samples, p.lp_samples),
      DOUBLE_FIELD("plan", lp_tolerance, p.lp_tolerance),
      INT_FIELD("plan", quadrature_points, p.quadrature_points),

      Field{"output", "dir",
            [](ExperimentPlan& p, const std::string&, const std::string& v) { p.output_dir = v; },
            [](const ExperimentPlan& p) { return p.output_dir.string(); }},
  };
  return table;
}

#undef DOUBLE_FIELD
#undef INT_FIELD
#undef BOOL_FIELD

void assign(ExperimentPlan& plan, const std::string& section, const std::string& key, const std::string& value) {
  for (const auto& f : fields())
    if (section == f.section && key == f.key) {
      f.set(plan, section + "." + key, boost::trim_copy(value));
      return;
    }
  throw InvalidArgument("config: unknown key [" + section + "] " + key);
}

}  // namespace

ExperimentPlan parse_plan(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  ExperimentPlan plan;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw InvalidArgument("config: key '" + section + "' outside any section");
    for (const auto& [key, value] : body) assign(plan, section, key, value.data());
  }
  return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("config: cannot open " + path.string());
  return parse_plan(in);
}

void apply_override(ExperimentPlan& plan, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw InvalidArgument("override must look like section.key=value: " + assignment);
  assign(plan, boost::trim_copy(assignment.substr(0, dot)), boost::trim_copy(assignment.substr(dot + 1, eq - dot - 1)),
         assignment.substr(eq + 1));
}

void write_plan(std::ostream& out, const ExperimentPlan& plan) {
  std::string section;
  for (const auto& f : fields()) {
    if (section != f.section) {
      if (!section.empty()) out << "\n";
      section = f.section;
      out << "[" << section << "]\n";
    }
    out << f.key << " = " << f.get(plan) << "\n";
  }
}

}  // namespace couette::experiments
