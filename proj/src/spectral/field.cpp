#include "couette/spectral/field.hpp"

#include <algorithm>
#include <cmath>

#include "couette/core/error.hpp"

namespace couette::spectral {

SpectralField::SpectralField(GridPtr grid, Frame frame)
    : grid_(std::move(grid)), frame_(frame) {
  require(grid_ != nullptr, "SpectralField needs a grid");
  coeffs_.assign(grid_->size(), Complex{});
}

SpectralField::SpectralField(GridPtr grid, std::vector<Complex> coeffs, Frame frame)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)), frame_(frame) {
  require(grid_ != nullptr, "SpectralField needs a grid");
  require(coeffs_.size() == grid_->size(), "coefficient count does not match grid");
}

Complex SpectralField::mode(int alpha, int eta_label) const {
  const int i = grid_->alpha_index(alpha);
  const int j = grid_->eta_index(eta_label);
  if (i < 0 || j < 0) return {};
  return (*this)(i, j);
}

void SpectralField::set_mode(int alpha, int eta_label, Complex value) {
  const int i = grid_->alpha_index(alpha);
  const int j = grid_->eta_index(eta_label);
  require(i >= 0 && j >= 0, "mode outside grid");
  at(i, j) = value;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require(same_grid(o), "grid mismatch in field arithmetic");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require(same_grid(o), "grid mismatch in field arithmetic");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

bool SpectralField::is_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

double SpectralField::hermitian_defect() const {
  const int nx = grid_->nx(), ny = grid_->ny();
  double worst = 0;
  for (int i = 0; i < nx; ++i) {
    const int mi = (nx - i) % nx;
    for (int j = 0; j < ny; ++j) {
      const int mj = (ny - j) % ny;
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(mi, mj))));
    }
  }
  return worst;
}

void SpectralField::enforce_hermitian() {
  const int nx = grid_->nx(), ny = grid_->ny();
  for (int i = 0; i < nx; ++i) {
    const int mi = (nx - i) % nx;
    for (int j = 0; j < ny; ++j) {
      const int mj = (ny - j) % ny;
      const std::size_t a = grid_->index(i, j), b = grid_->index(mi, mj);
      if (b < a) continue;
      const Complex avg = 0.5 * (coeffs_[a] + std::conj(coeffs_[b]));
      coeffs_[a] = avg;
      coeffs_[b] = std::conj(avg);
    }
  }
}

void SpectralField::apply_mask() {
  const int nx = grid_->nx(), ny = grid_->ny();
  for (int i = 0; i < nx; ++i) {
    if (!grid_->alpha_kept(i)) {
      std::fill_n(coeffs_.begin() + grid_->index(i, 0), ny, Complex{});
      continue;
    }
    for (int j = 0; j < ny; ++j)
      if (!grid_->eta_kept(j)) at(i, j) = {};
  }
}

double SpectralField::masked_max() const {
  double worst = 0;
  for (int i = 0; i < grid_->nx(); ++i)
    for (int j = 0; j < grid_->ny(); ++j)
      if (!grid_->kept(i, j)) worst = std::max(worst, std::abs((*this)(i, j)));
  return worst;
}

bool SpectralField::same_grid(const SpectralField& o) const {
  return grid_ == o.grid_ || grid_->same_as(*o.grid_);
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

double relative_l2_error(const SpectralField& a, const SpectralField& b) {
  require(a.same_grid(b), "grid mismatch");
  double num = 0, den = 0;
  auto ca = a.coeffs(), cb = b.coeffs();
  for (std::size_t k = 0; k < ca.size(); ++k) {
    num += std::norm(ca[k] - cb[k]);
    den += std::norm(cb[k]);
  }
  if (den == 0) return std::sqrt(num);
  return std::sqrt(num / den);
}

}  // namespace couette::spectral
