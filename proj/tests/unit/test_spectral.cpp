#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "couette/core/error.hpp"
#include "couette/spectral/checkpoint.hpp"
#include "couette/spectral/multipliers.hpp"
#include "couette/spectral/norms.hpp"
#include "couette/spectral/reframe.hpp"
#include "couette/spectral/resample.hpp"
#include "couette/spectral/transform.hpp"
#include "support/random_fields.hpp"

using namespace couette;
using namespace couette::spectral;

namespace {

std::vector<double> sample(const GridSpec& g, auto&& fn) {
  std::vector<double> v(g.size());
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) v[g.index(i, j)] = fn(g.x(i), g.y(j));
  return v;
}

}  // namespace

TEST_CASE("grid wavenumber tables") {
  auto g = make_grid(8, 8, kPi);
  CHECK(g->alpha_label(0) == 0);
  CHECK(g->alpha_label(3) == 3);
  CHECK(g->alpha_label(4) == -4);
  CHECK(g->alpha_label(7) == -1);
  CHECK(g->eta(5) == doctest::Approx(-3.0));
  CHECK(g->eta_step() == doctest::Approx(1.0));

  auto g2 = make_grid(8, 8, 2 * kPi);
  CHECK(g2->eta_step() == doctest::Approx(0.5));
  CHECK(g2->eta(1) == doctest::Approx(0.5));

  CHECK_THROWS_AS(make_grid(7, 8, kPi), InvalidArgument);
  CHECK_THROWS_AS(make_grid(2, 8, kPi), InvalidArgument);
  CHECK_THROWS_AS(make_grid(8, 8, 0.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(8, 8, kPi, 1.5), InvalidArgument);
}

TEST_CASE("dealias mask follows the two-thirds rule") {
  auto g = make_grid(64, 32, kPi);
  // 2/3 * 32 = 21.33, 2/3 * 16 = 10.67
  CHECK(g->alpha_cut() == 21);
  CHECK(g->eta_cut_label() == 10);
  CHECK(g->kept(g->alpha_index(21), g->eta_index(-10)));
  CHECK_FALSE(g->kept(g->alpha_index(22), 0));
  CHECK_FALSE(g->kept(0, g->eta_index(11)));
  auto g1 = make_grid(12, 12, kPi);
  CHECK(g1->alpha_cut() == 4);  // exactly 2/3 * 6
}

TEST_CASE("transform examples") {
  auto g = make_grid(16, 16, 2 * kPi);
  auto one = transform_forward(g, sample(*g, [](double, double) { return 1.0; }));
  CHECK(std::abs(one(0, 0) - 1.0) < 1e-14);
  double others = 0;
  for (std::size_t k = 1; k < g->size(); ++k) others = std::max(others, std::abs(one.coeffs()[k]));
  CHECK(others < 1e-14);

  auto c = transform_forward(g, sample(*g, [](double x, double) { return std::cos(x); }));
  CHECK(std::abs(c.mode(1, 0) - 0.5) < 1e-14);
  CHECK(std::abs(c.mode(-1, 0) - 0.5) < 1e-14);

  // y is measured from the box centre: sin(y) has coefficient -i/2 at eta=+1.
  auto s = transform_forward(g, sample(*g, [](double, double y) { return std::sin(y); }));
  CHECK(std::abs(s.mode(0, 2) - Complex(0, -0.5)) < 1e-14);  // eta label 2 = 1.0 on Ly = 2 pi
}

TEST_CASE("round trip on pseudo-random input") {
  std::mt19937_64 rng(7);
  for (auto dims : {std::pair{8, 8}, std::pair{32, 16}, std::pair{16, 64}}) {
    auto g = make_grid(dims.first, dims.second, 3.0);
    auto v = testing::random_values(*g, rng);
    auto f = transform_forward(g, v);
    CHECK(f.hermitian_defect() < 1e-15);
    auto back = transform_inverse(f);
    double num = 0, den = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      num += (back[k] - v[k]) * (back[k] - v[k]);
      den += v[k] * v[k];
    }
    CHECK(std::sqrt(num / den) < 1e-12);
  }
}

TEST_CASE("1d y transforms agree with the 2d convention") {
  std::mt19937_64 rng(3);
  auto g = make_grid(8, 32, 5.0);
  std::vector<double> prof(g->ny());
  std::uniform_real_distribution<double> u(-1, 1);
  for (auto& p : prof) p = u(rng);
  auto c1 = forward_y(*g, prof);
  auto f = transform_forward(g, sample(*g, [&](double, double y) {
                               const int j = static_cast<int>(std::lround((y + g->ly()) / g->dy()));
                               return prof[j];
                             }));
  for (int j = 0; j < g->ny(); ++j) CHECK(std::abs(c1[j] - f(0, j)) < 1e-14);
  auto back = inverse_y(*g, c1);
  for (int j = 0; j < g->ny(); ++j) CHECK(back[j] == doctest::Approx(prof[j]).epsilon(1e-12));
}

TEST_CASE("norm examples") {
  auto g = make_grid(16, 16, kPi);
  SpectralField f(g);
  f.set_mode(2, 0, 1.0);
  f.set_mode(-2, 0, 1.0);
  f *= 1.0 / l2_norm(f);
  auto n = compute_norms(f);
  CHECK(n.l2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(n.hlog == doctest::Approx(std::log(kE + 2)).epsilon(1e-14));
  CHECK(n.hlog == doctest::Approx(1.5514447139320509).epsilon(1e-12));

  SpectralField z(g);
  z.set_mode(0, 3, {0.2, 0.1});
  z.set_mode(0, -3, {0.2, -0.1});
  auto nz = compute_norms(z);
  CHECK(nz.hlog == doctest::Approx(nz.l2).epsilon(1e-15));
  CHECK(nz.nonzero_l2 == 0.0);

  auto c = transform_forward(g, sample(*g, [](double x, double) { return std::cos(x); }));
  c *= 1.0 / l2_norm(c);
  auto nc = compute_norms(c);
  CHECK(nc.nonzero_l2 == doctest::Approx(nc.l2).epsilon(1e-14));
  CHECK(nc.zero_l2 < 1e-15);

  SpectralField bad(g);
  bad.set_mode(1, 1, {std::nan(""), 0});
  CHECK_THROWS_AS(compute_norms(bad), NumericalError);
}

TEST_CASE("Parseval against collocation quadrature") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = make_grid(16 + 8 * (trial % 3), 24, 1.0 + trial * 0.3);
    auto v = testing::random_values(*g, rng);
    auto f = transform_forward(g, v);
    double quad = 0;
    for (double x : v) quad += x * x;
    quad *= g->dx() * g->dy();
    CHECK(std::abs(l2_norm(f) * l2_norm(f) - quad) <= 1e-10 * quad);
  }
}

TEST_CASE("norm bundle invariants on random fields") {
  std::mt19937_64 rng(5);
  auto g = make_grid(32, 32, 2 * kPi);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = testing::random_field(g, rng, 1 + trial % 10, 1 + trial % 13);
    auto n = compute_norms(f);
    CHECK(std::abs(n.l2 * n.l2 - n.nonzero_l2 * n.nonzero_l2 - n.zero_l2 * n.zero_l2) <=
          1e-12 * n.l2 * n.l2);
    CHECK(n.hlog >= n.l2);
    auto pn = project_nonzero(f);
    CHECK(hlog_norm(pn) >= std::log(kE + 1) * n.nonzero_l2 * (1 - 1e-14));
  }
}

TEST_CASE("multiplier examples") {
  auto g = make_grid(16, 16, kPi);
  auto c = transform_forward(g, sample(*g, [](double x, double) { return std::cos(x); }));
  auto d = transform_inverse(dx(c));
  for (int i = 0; i < g->nx(); ++i)
    for (int j = 0; j < g->ny(); ++j) CHECK(d[g->index(i, j)] == doctest::Approx(-std::sin(g->x(i))).epsilon(1e-12));

  SpectralField m(g);
  m.set_mode(4, 1, {1.0, 2.0});
  auto h = apply_x_multiplier(m, XMultiplier::half_derivative);
  CHECK(std::abs(h.mode(4, 1) - Complex(2.0, 4.0)) < 1e-15);
}

TEST_CASE("projection algebra and multiplier commutation") {
  std::mt19937_64 rng(13);
  auto g = make_grid(16, 32, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = testing::random_field(g, rng, 6, 10);
    auto p0 = apply_x_multiplier(f, XMultiplier::project_zero);
    auto pn = apply_x_multiplier(f, XMultiplier::project_nonzero);
    auto both = apply_x_multiplier(p0, XMultiplier::project_nonzero);
    for (auto c : both.coeffs()) CHECK(c == Complex{});
    CHECK(relative_l2_error(p0 + pn, f) <= 1e-14);

    auto a = apply_x_multiplier(dx(f), XMultiplier::log_weight);
    auto b = dx(apply_x_multiplier(f, XMultiplier::log_weight));
    // Same products in a different association order: equal up to one rounding.
    for (std::size_t k = 0; k < a.coeffs().size(); ++k)
      CHECK(std::abs(a.coeffs()[k] - b.coeffs()[k]) <= 4e-16 * std::abs(b.coeffs()[k]));
  }
}

TEST_CASE("sheared-frame derivative uses the effective wavenumber") {
  auto g = make_grid(8, 16, kPi);
  SpectralField f(g, Frame::sheared(2.0));
  f.set_mode(1, 3, 1.0);
  f.set_mode(-1, -3, 1.0);
  auto d = dy(f);
  CHECK(std::abs(d.mode(1, 3) - Complex(0, 3.0 - 2.0)) < 1e-15);
  CHECK(d.hermitian_defect() < 1e-15);
}

TEST_CASE("physical values do not depend on the frame") {
  std::mt19937_64 rng(23);
  auto g = make_grid(16, 32, kPi);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = testing::random_field(g, rng, 2, 2);
    f.set_frame(Frame::sheared(1.0));
    const auto still = reframe(f, 0.0);
    REQUIRE(still.lost_fraction == 0.0);
    const auto a = physical_values(f);
    const auto b = transform_inverse(still.field);
    double err = 0, scale = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      err = std::max(err, std::abs(a[k] - b[k]));
      scale = std::max(scale, std::abs(b[k]));
    }
    CHECK(err <= 1e-13 * scale);
    CHECK(linf_norm(f) == doctest::Approx(linf_norm(still.field)).epsilon(1e-13));
  }
  // Direct sum at one point for a single sheared mode.
  SpectralField m(g, Frame::sheared(0.5));
  m.set_mode(1, 2, Complex(0.5, 0.25));
  m.set_mode(-1, -2, Complex(0.5, -0.25));
  const auto v = physical_values(m);
  const double x = g->x(3), y = g->y(5);
  const double expect = 2 * std::real(Complex(0.5, 0.25) * std::polar(1.0, x - 0.5 * y + 2 * y));
  CHECK(v[g->index(3, 5)] == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("mixed norm examples") {
  auto g = make_grid(16, 16, kPi);
  auto gx = transform_forward(g, sample(*g, [](double x, double) { return 1.0 + std::cos(2 * x); }));
  // ||1 + cos 2x||_{L2(T)}^2 = 2 pi + pi
  CHECK(mixed_norm(gx, MixedNorm::l2x_linfy) == doctest::Approx(std::sqrt(3 * kPi)).epsilon(1e-12));
  auto sep = transform_forward(g, sample(*g, [](double x, double y) { return std::cos(x) * std::cos(y); }));
  CHECK(mixed_norm(sep, MixedNorm::l2x_linfy) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  CHECK(mixed_norm(sep, MixedNorm::linf_xy) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grid maximum is monotone under refinement") {
  std::mt19937_64 rng(17);
  auto coarse = make_grid(16, 16, kPi);
  auto fine = make_grid(64, 64, kPi);
  auto finer = make_grid(128, 128, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = testing::random_field(coarse, rng, 2, 2);
    const double a = linf_norm(f);
    const double b = linf_norm(resample(f, fine));
    const double c = linf_norm(resample(f, finer));
    CHECK(b >= a * (1 - 1e-12));
    CHECK(c >= b * (1 - 1e-12));
    CHECK(c <= 1.01 * b);
  }
}

TEST_CASE("checkpoint round trip is bit exact") {
  std::mt19937_64 rng(19);
  auto g = make_grid(8, 16, 2.5);
  auto f = testing::random_field(g, rng, 3, 5);
  f.set_frame(Frame::sheared(0.75));
  std::stringstream buf;
  write_checkpoint(buf, f, 12.5);
  const std::string bytes = buf.str();
  CHECK(bytes.substr(0, 4) == "CED1");
  CHECK(bytes.size() == 4 + 4 + 4 + 8 + 1 + 8 + 8 + g->size() * 16);
  auto back = read_checkpoint(buf);
  CHECK(back.time == 12.5);
  CHECK(back.field.frame() == f.frame());
  CHECK(back.field.grid().same_as(*g));
  for (std::size_t k = 0; k < g->size(); ++k) CHECK(back.field.coeffs()[k] == f.coeffs()[k]);

  std::stringstream junk("XXXX");
  CHECK_THROWS_AS(read_checkpoint(junk), IoError);
}
