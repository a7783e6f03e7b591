#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "couette/core/error.hpp"
#include "couette/core/quadrature.hpp"
#include "couette/linear/biot_savart.hpp"
#include "couette/linear/estimates.hpp"
#include "couette/linear/propagator.hpp"
#include "couette/solver/initial_condition.hpp"
#include "couette/solver/run.hpp"
#include "couette/solver/stepper.hpp"
#include "couette/spectral/multipliers.hpp"
#include "couette/spectral/norms.hpp"
#include "couette/spectral/reframe.hpp"
#include "couette/spectral/transform.hpp"

using namespace couette;
using namespace couette::spectral;
using namespace couette::solver;

namespace {

SimConfig small_config() {
  SimConfig c;
  c.nx = 32;
  c.ny = 64;
  c.ly = kPi;
  c.nu = 1e-2;
  c.dt = 0.05;
  c.t_final = 1.0;
  c.remap_interval = 1.0;
  c.ic.kind = IcKind::random_band;
  c.ic.alpha_min = 1;
  c.ic.alpha_max = 3;
  c.ic.eta_max = 3;
  c.ic.envelope_width = 0;
  c.ic.target_hlog_norm = 0.5;
  c.boundary_monitor = false;
  return c;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("couette_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

SpectralField final_in_frame_zero(const TrajectoryState& st) {
  if (st.omega.frame().offset() == 0) return st.omega;
  return reframe(st.omega, 0.0).field;
}

}  // namespace

TEST_CASE("config validation and json round trip") {
  SimConfig c = small_config();
  c.validate();
  const SimConfig back = sim_config_from_json(to_json(c));
  CHECK(config_hash(back) == config_hash(c));
  CHECK(config_hash(c).size() == 16);
  SimConfig d = c;
  d.seed = 2;
  CHECK(config_hash(d) != config_hash(c));

  SimConfig bad = c;
  bad.nu = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad.allow_zero_nu = true;
  CHECK_NOTHROW(bad.validate());
  bad = c;
  bad.remap_interval = 0.5;  // 0.5 * Ly / pi is not an integer
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = c;
  bad.t_final = 3.0;
  bad.dt = 0.3;  // remap interval is not a multiple
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK_THROWS_AS(ic_kind_from_string("vortex"), InvalidArgument);
}

TEST_CASE("single mode initial condition") {
  auto grid = make_grid(32, 64, 2 * kPi);
  InitialConditionSpec spec;
  spec.kind = IcKind::single_mode;
  spec.mode_alpha = 1;
  spec.mode_eta = 1.0;
  const InitialData d = generate_initial_condition(spec, grid, 7, 1.0);
  CHECK(hlog_norm(d.omega) == doctest::Approx(1.0).epsilon(1e-12));
  // eta = 1 is label 2 on Ly = 2 pi.
  double off = 0;
  for (int i = 0; i < grid->nx(); ++i)
    for (int j = 0; j < grid->ny(); ++j) {
      const int a = std::abs(grid->alpha_label(i)), e = std::abs(grid->eta_label(j));
      if (!(a == 1 && e == 2)) off = std::max(off, std::abs(d.omega(i, j)));
    }
  CHECK(off < 1e-15);
  const double c = 1.0 / (log_weight(1.0) * std::sqrt(4 * grid->parseval_weight()));
  CHECK(d.omega.mode(1, 2).real() == doctest::Approx(c).epsilon(1e-14));
  CHECK(d.omega.mode(-1, -2).real() == doctest::Approx(c).epsilon(1e-14));
  for (double v : d.v0) CHECK(v == 0.0);
}

TEST_CASE("initial conditions are deterministic and rescaled exactly") {
  auto grid = make_grid(32, 128, 2 * kPi);
  InitialConditionSpec spec;
  spec.envelope_width = 1.0;
  const InitialData a = generate_initial_condition(spec, grid, 11, 3e-4);
  const InitialData b = generate_initial_condition(spec, grid, 11, 3e-4);
  const InitialData c = generate_initial_condition(spec, grid, 12, 3e-4);
  CHECK(std::equal(a.omega.coeffs().begin(), a.omega.coeffs().end(), b.omega.coeffs().begin()));
  CHECK(a.v0 == b.v0);
  CHECK(relative_l2_error(a.omega, c.omega) > 0.1);
  CHECK(hlog_norm(a.omega) == doctest::Approx(3e-4).epsilon(1e-12));
  CHECK(a.omega.hermitian_defect() < 1e-18);
  CHECK(l2_norm(project_zero(a.omega)) == 0.0);

  // About 10^4 modes: 50 alphas times 201 eta labels.
  auto big = make_grid(160, 320, 2 * kPi);
  InitialConditionSpec wide;
  wide.alpha_min = 1;
  wide.alpha_max = 50;
  wide.eta_max = 50;
  wide.envelope_width = 0;
  const InitialData w = generate_initial_condition(wide, big, 3, 0.25);
  int modes = 0;
  for (auto z : w.omega.coeffs()) modes += z != Complex{};
  CHECK(modes >= 20000);  // both Hermitian halves
  CHECK(hlog_norm(w.omega) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("initial condition zero mode and errors") {
  auto grid = make_grid(32, 128, 2 * kPi);
  InitialConditionSpec spec;
  spec.zero_mode_amplitude = 1e-3;
  spec.galilean_mean = 0.25;
  const InitialData d = generate_initial_condition(spec, grid, 1, 0.01);
  CHECK(hlog_norm(d.omega) == doctest::Approx(0.01).epsilon(1e-12));
  double mean = 0, sq = 0;
  for (double v : d.v0) mean += v;
  mean /= d.v0.size();
  for (double v : d.v0) sq += (v - mean) * (v - mean) * grid->dy();
  CHECK(mean == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::sqrt(sq) == doctest::Approx(1e-3).epsilon(1e-6));
  // omega_0 = -d/dy v0.
  std::vector<double> dv(grid->ny());
  const auto vh = forward_y(*grid, d.v0);
  for (int j = 0; j < grid->ny(); ++j)
    CHECK(std::abs(d.omega(0, j) - Complex(0, -grid->eta(j)) * vh[j]) < 1e-15);

  CHECK_THROWS_AS(generate_initial_condition(spec, grid, 1, 0.0), InvalidArgument);
  InitialConditionSpec wide;
  wide.alpha_max = 40;  // beyond the 2/3 cut of 32
  CHECK_THROWS_AS(generate_initial_condition(wide, grid, 1, 1.0), InvalidArgument);
  InitialConditionSpec empty;
  empty.alpha_min = 3;
  empty.alpha_max = 2;
  CHECK_THROWS_AS(generate_initial_condition(empty, grid, 1, 1.0), InvalidArgument);
}

TEST_CASE("zero data stays zero") {
  SimConfig c = small_config();
  auto grid = c.make_grid();
  InitialData zero{SpectralField(grid, Frame::sheared(0)), std::vector<double>(grid->ny(), 0.0)};
  c.t_final = 2.0;
  const RunResult r = run_from(c, make_initial_state(c, zero));
  CHECK(r.completed);
  for (auto z : r.final_state.omega.coeffs()) CHECK(z == Complex{});
  for (double v : r.final_state.v0) CHECK(v == 0.0);
  CHECK(r.record.samples.size() == 41);
}

TEST_CASE("x-independent data follows the heat equation") {
  SimConfig c = small_config();
  c.ly = 2 * kPi;
  c.ic.kind = IcKind::single_mode;
  c.ic.mode_alpha = 0;
  c.ic.mode_eta = 1.0;
  c.ic.target_hlog_norm = 1.0;
  c.t_final = 0.5;
  c.remap_interval = 10;
  auto st = make_initial_state(c, generate_initial_condition(c));
  const Complex w0 = st.omega.mode(0, 2);
  const Complex z0 = forward_y(st.omega.grid(), st.v0)[st.omega.grid().eta_index(2)];
  REQUIRE(std::abs(w0) > 0.01);
  REQUIRE(std::abs(z0) > 0.01);
  for (int n = 1; n <= 10; ++n) {
    st = step(st, c);
    const double decay = std::exp(-c.nu * c.dt * n);
    CHECK(std::abs(st.omega.mode(0, 2) - decay * w0) < 1e-14);
    const Complex z = forward_y(st.omega.grid(), st.v0)[st.omega.grid().eta_index(2)];
    CHECK(std::abs(z - decay * z0) < 1e-14);
  }
}

TEST_CASE("linear runs equal the exact propagator") {
  SimConfig c = small_config();
  c.nonlinear = false;
  c.t_final = 3.0;
  auto data = generate_initial_condition(c);
  const SpectralField w_in = data.omega;
  const RunResult r = run(c);
  REQUIRE(r.completed);
  SpectralField exact = linear::propagate(w_in, {c.nu, 0.0, 3.0});
  exact = reframe(exact, 0.0).field;
  CHECK(relative_l2_error(final_in_frame_zero(r.final_state), exact) < 1e-13);
}

TEST_CASE("linearization limit against the exact propagator") {
  SimConfig c;
  c.nu = 1e-3;
  c.nx = 32;
  c.ny = 256;
  c.ly = 2 * kPi;
  c.dt = 0.05;
  c.t_final = 10.0;  // nu^(-1/3)
  c.ic.target_hlog_norm = 1e-8;
  auto data = generate_initial_condition(c);
  const SpectralField w_in = data.omega;
  const RunResult r = run(c);
  REQUIRE(r.completed);
  SpectralField exact = reframe(linear::propagate(w_in, {c.nu, 0.0, c.t_final}), 0.0).field;
  const double err = relative_l2_error(project_nonzero(final_in_frame_zero(r.final_state)), exact);
  MESSAGE("linearization relative error " << err);
  CHECK(err <= 1e-4);
}

TEST_CASE("inviscid enstrophy conservation over 1000 steps") {
  SimConfig c = small_config();
  c.nu = 0;
  c.allow_zero_nu = true;
  c.t_final = 50.0;
  c.remap_interval = 100.0;
  c.ic.target_hlog_norm = 3e-4;
  auto st = make_initial_state(c, generate_initial_condition(c));
  const double e0 = l2_norm(st.omega);
  for (int n = 0; n < 1000; ++n) st = step(st, c);
  const double drift = std::abs(l2_norm(st.omega) - e0) / e0;
  MESSAGE("inviscid enstrophy drift " << drift);
  CHECK(drift <= 1e-10);
}

TEST_CASE("enstrophy balance with viscosity") {
  SimConfig c = small_config();
  c.nx = 64;
  c.ny = 256;
  c.nu = 1e-3;
  c.t_final = 4.0;
  c.ic.target_hlog_norm = 0.3;
  const RunResult r = run(c);
  REQUIRE(r.completed);
  std::vector<double> g;
  for (const auto& s : r.record.samples) g.push_back(s.grad_l2 * s.grad_l2);
  const double diss = simpson(g, c.dt);
  const double e0 = std::pow(r.record.samples.front().l2, 2);
  const double e1 = std::pow(r.record.samples.back().l2, 2);
  const double residual = std::abs(e1 + 2 * c.nu * diss - e0) / e0 / c.t_final;
  MESSAGE("enstrophy residual per unit time " << residual);
  CHECK(residual <= 1e-6);
  // The trapezoid accumulator agrees to its own accuracy.
  CHECK(std::abs(r.final_state.acc.grad_sq - diss) <= 1e-3 * diss);
}

TEST_CASE("incompressibility, reality and zero x-mean along a trajectory") {
  SimConfig c = small_config();
  c.t_final = 2.0;
  double div = 0, herm = 0, scale = 0;
  Observer ob = [&](const TrajectoryState& st, const diagnostics::DiagnosticSample&) {
    const auto v = linear::biot_savart(project_nonzero(st.omega));
    scale = std::max(scale, st.omega.masked_max());
    div = std::max(div, linear::divergence_defect(v));
    herm = std::max(herm, st.omega.hermitian_defect());
  };
  const RunResult r = run(c, {ob});
  REQUIRE(r.completed);
  CHECK(div <= 1e-13 * std::max(1.0, scale));
  CHECK(herm <= 1e-13 * std::max(1.0, scale));
}

TEST_CASE("remap examples") {
  SimConfig c = small_config();
  auto st = make_initial_state(c, generate_initial_condition(c));
  // At offset 0 remapping is the identity.
  const TrajectoryState same = remap(st, c);
  CHECK(std::equal(same.omega.coeffs().begin(), same.omega.coeffs().end(), st.omega.coeffs().begin()));
  CHECK(same.acc.remap_loss == 0.0);

  // Mode (1, 0) on Ly = pi after two shear units: relabelled to eta = -2 exactly.
  auto grid = make_grid(32, 64, kPi);
  TrajectoryState m;
  m.omega = SpectralField(grid, Frame::sheared(2.0));
  m.omega.set_mode(1, 0, {0.5, 0.25});
  m.omega.set_mode(-1, 0, {0.5, -0.25});
  m.v0.assign(64, 0.0);
  const TrajectoryState moved = remap(m, c);
  CHECK(moved.omega.mode(1, -2) == Complex(0.5, 0.25));
  CHECK(moved.omega.mode(-1, 2) == Complex(0.5, -0.25));
  CHECK(moved.acc.remap_loss == 0.0);
  CHECK(moved.omega.frame().offset() == 0.0);

  // Band occupying a third of the eta range, shifted inside the mask.
  TrajectoryState b;
  b.omega = SpectralField(grid, Frame::sheared(1.0));
  for (int a = 1; a <= 3; ++a)
    for (int e = -5; e <= 5; ++e) {
      b.omega.set_mode(a, e, {1.0 / (a + e * e), 0.1});
      b.omega.set_mode(-a, -e, {1.0 / (a + e * e), -0.1});
    }
  b.v0.assign(64, 0.0);
  CHECK(remap(b, c).acc.remap_loss <= 1e-12);

  // Content pushed past the mask aborts: (3, -20) moves to label -23.
  TrajectoryState edge;
  edge.omega = SpectralField(grid, Frame::sheared(1.0));
  edge.omega.set_mode(1, 0, 1.0);
  edge.omega.set_mode(-1, 0, 1.0);
  edge.omega.set_mode(3, -20, 1.0);
  edge.omega.set_mode(-3, 20, 1.0);
  edge.v0.assign(64, 0.0);
  CHECK_THROWS_AS(remap(edge, c), StepFailure);
}

TEST_CASE("run with t_final = 0 records the initial snapshot only") {
  SimConfig c = small_config();
  c.t_final = 0;
  const RunResult r = run(c);
  CHECK(r.completed);
  REQUIRE(r.record.samples.size() == 1);
  CHECK(r.record.samples[0].time == 0.0);
  CHECK(r.record.samples[0].nonzero.hlog == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("linear run reproduces the linear estimate reports") {
  SimConfig c = small_config();
  c.nonlinear = false;
  c.t_final = 6.0;
  c.ny = 128;
  const auto w_in = generate_initial_condition(c).omega;
  const RunResult r = run(c);
  REQUIRE(r.completed);
  std::vector<linear::InstantFunctionals> f;
  for (const auto& s : r.record.samples) f.push_back(s.nonzero);
  const auto from_run = linear::reports_from_series(r.record.times(), f, c.nu);
  const int qp = static_cast<int>(r.record.samples.size());
  const auto oracle = linear::evaluate_linear_estimates(w_in, c.nu, c.t_final, qp);
  REQUIRE(from_run.size() == oracle.size());
  for (std::size_t k = 0; k < oracle.size(); ++k)
    CHECK_MESSAGE(std::abs(from_run[k].ratio - oracle[k].ratio) <= 1e-6 * std::max(1.0, oracle[k].ratio),
                  linear::estimate_id(oracle[k].quantity) << " " << from_run[k].ratio << " " << oracle[k].ratio);
}

TEST_CASE("identical configs give identical bytes") {
  SimConfig c = small_config();
  c.t_final = 1.0;
  const auto d1 = scratch_dir("det1"), d2 = scratch_dir("det2");
  RunResult a = run(c, {}, {d1});
  RunResult b = run(c, {}, {d2});
  CHECK(a.io_errors.empty());
  const std::string csv = read_file(d1 / "diagnostics.csv");
  CHECK(!csv.empty());
  CHECK(csv == read_file(d2 / "diagnostics.csv"));
  CHECK(read_file(d1 / "checkpoint.bin") == read_file(d2 / "checkpoint.bin"));
  CHECK(std::filesystem::exists(d1 / "summary.json"));
}

TEST_CASE("checkpoint with sidecar restores the state") {
  SimConfig c = small_config();
  c.t_final = 0.5;
  const auto dir = scratch_dir("ckpt");
  const RunResult r = run(c, {}, {dir});
  const StateCheckpoint cp = read_state_checkpoint(dir / "checkpoint.bin");
  CHECK(cp.time == r.final_state.time);
  CHECK(cp.step_count == r.final_state.step_count);
  CHECK(cp.config_hash == r.config_hash);
  CHECK(cp.v0 == r.final_state.v0);
  CHECK(cp.acc.grad_sq == r.final_state.acc.grad_sq);
  CHECK(relative_l2_error(cp.omega, r.final_state.omega) == 0.0);

  // Restart from it without rescaling keeps the vorticity.
  SimConfig c2 = c;
  c2.ic.kind = IcKind::from_checkpoint;
  c2.ic.checkpoint_path = (dir / "checkpoint.bin").string();
  c2.ic.target_hlog_norm.reset();
  const InitialData d = generate_initial_condition(c2);
  CHECK(d.omega.frame() == r.final_state.omega.frame());
  CHECK(relative_l2_error(d.omega, r.final_state.omega) < 1e-14);
  REQUIRE(d.v0.size() == r.final_state.v0.size());
  for (std::size_t j = 0; j < d.v0.size(); ++j) CHECK(std::abs(d.v0[j] - r.final_state.v0[j]) < 1e-15);
}

TEST_CASE("CFL abort keeps partial results") {
  SimConfig c = small_config();
  c.ic.target_hlog_norm = 200.0;
  c.cfl_policy = CflPolicy::abort;
  c.t_final = 1.0;
  const auto dir = scratch_dir("cfl");
  try {
    run(c, {}, {dir});
    FAIL("expected a RunFailure");
  } catch (const RunFailure& e) {
    CHECK(!e.partial().completed);
    CHECK(!e.partial().record.samples.empty());
    CHECK(std::filesystem::exists(dir / "diagnostics.csv"));
  }
  // The reduce policy halves dt instead.
  c.cfl_policy = CflPolicy::reduce;
  c.t_final = 0.1;
  const RunResult r = run(c);
  CHECK(r.completed);
  CHECK(r.final_state.dt < c.dt);
  CHECK(r.final_state.time == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("fourth-order convergence in dt") {
  SimConfig c = small_config();
  c.nu = 1e-2;
  c.t_final = 2.0;
  c.ic.target_hlog_norm = 1.0;
  c.cfl_max = 1.0;
  auto final_for = [&](double dt) {
    SimConfig k = c;
    k.dt = dt;
    return final_in_frame_zero(run(k).final_state);
  };
  const SpectralField ref = final_for(0.1 / 8);
  const double e1 = relative_l2_error(final_for(0.1), ref);
  const double e2 = relative_l2_error(final_for(0.05), ref);
  MESSAGE("errors " << e1 << " " << e2 << " ratio " << e1 / e2);
  CHECK(e1 > 1e-12);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.25));
}
