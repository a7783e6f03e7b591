#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace couette::spectral {

// Discretization of [0, 2pi) x [-Ly, Ly).
//
// Storage is row-major with the x-wavenumber index outermost. Row i holds
// alpha = i for i < Nx/2 and alpha = i - Nx for the rest (FFT ordering);
// the same convention applies to the y index, scaled by pi/Ly.
class GridSpec {
 public:
  GridSpec(int nx, int ny, double ly, double dealias_fraction = 2.0 / 3.0);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double ly() const { return ly_; }
  double dealias_fraction() const { return dealias_fraction_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny_ + j; }

  // Signed integer labels for a storage index.
  int alpha_label(int i) const { return i < nx_ / 2 ? i : i - nx_; }
  int eta_label(int j) const { return j < ny_ / 2 ? j : j - ny_; }
  double alpha(int i) const { return alpha_label(i); }
  double eta(int j) const { return eta_label(j) * eta_step_; }
  double eta_step() const { return eta_step_; }

  // Storage index for a signed label, or -1 when it is not representable.
  int alpha_index(int label) const;
  int eta_index(int label) const;

  bool alpha_kept(int i) const { return alpha_kept_[i]; }
  bool eta_kept(int j) const { return eta_kept_[j]; }
  bool kept(int i, int j) const { return alpha_kept_[i] && eta_kept_[j]; }
  // Largest retained |alpha| and |eta| after dealiasing.
  int alpha_cut() const { return alpha_cut_; }
  int eta_cut_label() const { return eta_cut_; }
  double eta_cut() const { return eta_cut_ * eta_step_; }

  double x(int i) const;
  double y(int j) const;
  double dx() const;
  double dy() const;

  // ||f||^2 = parseval_weight() * sum |c|^2.
  double parseval_weight() const;

  bool same_as(const GridSpec& other) const;

 private:
  int nx_, ny_;
  double ly_, dealias_fraction_, eta_step_;
  int alpha_cut_, eta_cut_;
  std::vector<bool> alpha_kept_, eta_kept_;
};

using GridPtr = std::shared_ptr<const GridSpec>;

GridPtr make_grid(int nx, int ny, double ly, double dealias_fraction = 2.0 / 3.0);

}  // namespace couette::spectral
