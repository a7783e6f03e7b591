#include "couette/spectral/grid.hpp"

#include <cmath>
#include <string>

#include "couette/core/error.hpp"
#include "couette/core/types.hpp"

namespace couette::spectral {

namespace {

void check_dim(int n, const char* name) {
  require(n >= 4 && n % 2 == 0,
          std::string(name) + " must be even and >= 4, got " + std::to_string(n));
}

}  // namespace

GridSpec::GridSpec(int nx, int ny, double ly, double dealias_fraction)
    : nx_(nx), ny_(ny), ly_(ly), dealias_fraction_(dealias_fraction) {
  check_dim(nx, "Nx");
  check_dim(ny, "Ny");
  require(std::isfinite(ly) && ly > 0, "Ly must be positive");
  require(dealias_fraction > 0 && dealias_fraction <= 1, "dealias_fraction must lie in (0,1]");
  eta_step_ = kPi / ly_;
  // Small slack so that 2/3 * N/2 landing on an integer keeps that integer.
  alpha_cut_ = static_cast<int>(std::floor(dealias_fraction_ * (nx_ / 2) + 1e-9));
  eta_cut_ = static_cast<int>(std::floor(dealias_fraction_ * (ny_ / 2) + 1e-9));
  alpha_kept_.resize(nx_);
  eta_kept_.resize(ny_);
  for (int i = 0; i < nx_; ++i) alpha_kept_[i] = std::abs(alpha_label(i)) <= alpha_cut_;
  for (int j = 0; j < ny_; ++j) eta_kept_[j] = std::abs(eta_label(j)) <= eta_cut_;
}

int GridSpec::alpha_index(int label) const {
  if (label < -nx_ / 2 || label >= nx_ / 2) return -1;
  return label >= 0 ? label : label + nx_;
}

int GridSpec::eta_index(int label) const {
  if (label < -ny_ / 2 || label >= ny_ / 2) return -1;
  return label >= 0 ? label : label + ny_;
}

double GridSpec::x(int i) const { return 2 * kPi * i / nx_; }
double GridSpec::y(int j) const { return -ly_ + 2 * ly_ * j / ny_; }
double GridSpec::dx() const { return 2 * kPi / nx_; }
double GridSpec::dy() const { return 2 * ly_ / ny_; }
double GridSpec::parseval_weight() const { return 2 * kPi * 2 * ly_; }

bool GridSpec::same_as(const GridSpec& o) const {
  return nx_ == o.nx_ && ny_ == o.ny_ && ly_ == o.ly_ && dealias_fraction_ == o.dealias_fraction_;
}

GridPtr make_grid(int nx, int ny, double ly, double dealias_fraction) {
  return std::make_shared<const GridSpec>(nx, ny, ly, dealias_fraction);
}

}  // namespace couette::spectral
