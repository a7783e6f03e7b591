#pragma once

#include <span>
#include <vector>

#include "couette/core/types.hpp"
#include "couette/spectral/grid.hpp"

namespace couette::spectral {

enum class FrameKind { stationary, sheared };

// sheared(s): coefficients represent W(x, y) = omega(x + y s, y), so the
// physical wavenumber of storage slot (alpha, eta) is eta - alpha s.
struct Frame {
  FrameKind kind = FrameKind::stationary;
  double shear = 0.0;

  static Frame stationary() { return {}; }
  static Frame sheared(double s) { return {FrameKind::sheared, s}; }
  double offset() const { return kind == FrameKind::sheared ? shear : 0.0; }
  bool operator==(const Frame&) const = default;
};

// Fourier coefficients of a real field relative to exp(i(alpha x + eta y)),
// normalized so that f(x, y) = sum c exp(i(alpha x + eta y)).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(GridPtr grid, Frame frame = {});
  SpectralField(GridPtr grid, std::vector<Complex> coeffs, Frame frame = {});

  const GridSpec& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Frame frame() const { return frame_; }
  void set_frame(Frame f) { frame_ = f; }

  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  Complex operator()(int i, int j) const { return coeffs_[grid_->index(i, j)]; }
  Complex& at(int i, int j) { return coeffs_[grid_->index(i, j)]; }

  // Coefficient by signed wavenumber labels; zero when out of range.
  Complex mode(int alpha, int eta_label) const;
  void set_mode(int alpha, int eta_label, Complex value);

  // Physical y-wavenumber of slot (i, j) in this field's frame.
  double effective_eta(int i, int j) const {
    return grid_->eta(j) - grid_->alpha(i) * frame_.offset();
  }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  SpectralField& operator*=(Complex s);

  bool is_finite() const;
  // max |c(a, e) - conj(c(-a, -e))| over pairs that are both representable.
  double hermitian_defect() const;
  void enforce_hermitian();
  void apply_mask();
  // Largest |c| outside the dealias mask.
  double masked_max() const;
  bool same_grid(const SpectralField& o) const;

 private:
  GridPtr grid_;
  std::vector<Complex> coeffs_;
  Frame frame_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

// Relative L2 distance of coefficient vectors, |a - b| / |b|.
double relative_l2_error(const SpectralField& a, const SpectralField& b);

}  // namespace couette::spectral
