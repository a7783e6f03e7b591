#include "couette/spectral/transform.hpp"

#include "couette/core/error.hpp"
#include "couette/spectral/fft.hpp"

namespace couette::spectral {

void y_origin_phase(std::span<Complex> data, int nx, int ny) {
  for (int i = 0; i < nx; ++i) {
    Complex* row = data.data() + static_cast<std::size_t>(i) * ny;
    for (int j = 1; j < ny; j += 2) row[j] = -row[j];
  }
}

SpectralField transform_forward(const GridPtr& grid, std::span<const double> values, Frame frame) {
  require(values.size() == grid->size(), "transform_forward: value count does not match grid");
  std::vector<Complex> buf(values.begin(), values.end());
  fft::transform_2d(buf, grid->nx(), grid->ny(), fft::Direction::forward);
  const double scale = 1.0 / static_cast<double>(grid->size());
  for (auto& c : buf) c *= scale;
  y_origin_phase(buf, grid->nx(), grid->ny());
  SpectralField out(grid, std::move(buf), frame);
  out.enforce_hermitian();
  return out;
}

std::vector<double> transform_inverse(const SpectralField& field) {
  const auto& g = field.grid();
  std::vector<Complex> buf(field.coeffs().begin(), field.coeffs().end());
  y_origin_phase(buf, g.nx(), g.ny());
  fft::transform_2d(buf, g.nx(), g.ny(), fft::Direction::backward);
  std::vector<double> out(buf.size());
  for (std::size_t k = 0; k < buf.size(); ++k) out[k] = buf[k].real();
  return out;
}

std::vector<Complex> y_profiles(const SpectralField& field) {
  const auto& g = field.grid();
  std::vector<Complex> buf(field.coeffs().begin(), field.coeffs().end());
  y_origin_phase(buf, g.nx(), g.ny());
  fft::transform_rows(buf, g.nx(), g.ny(), fft::Direction::backward);
  return buf;
}

std::vector<double> physical_values(const SpectralField& field) {
  const double s = field.frame().offset();
  if (s == 0) return transform_inverse(field);
  const auto& g = field.grid();
  const int nx = g.nx(), ny = g.ny();
  const std::vector<Complex> prof = y_profiles(field);
  std::vector<Complex> cols(prof.size());
  for (int i = 0; i < nx; ++i) {
    const double a = g.alpha(i);
    for (int j = 0; j < ny; ++j)
      cols[static_cast<std::size_t>(j) * nx + i] = prof[g.index(i, j)] * std::polar(1.0, -a * g.y(j) * s);
  }
  fft::transform_rows(cols, ny, nx, fft::Direction::backward);
  std::vector<double> out(prof.size());
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) out[g.index(i, j)] = cols[static_cast<std::size_t>(j) * nx + i].real();
  return out;
}

std::vector<Complex> forward_y(const GridSpec& grid, std::span<const double> values) {
  require(values.size() == static_cast<std::size_t>(grid.ny()), "forward_y: length mismatch");
  std::vector<Complex> buf(values.begin(), values.end());
  fft::transform_1d(buf, fft::Direction::forward);
  const double scale = 1.0 / grid.ny();
  for (auto& c : buf) c *= scale;
  y_origin_phase(buf, 1, grid.ny());
  // Reality of the profile; the Nyquist entry is its own partner.
  const int ny = grid.ny();
  for (int j = 1; j < ny / 2; ++j) {
    const Complex avg = 0.5 * (buf[j] + std::conj(buf[ny - j]));
    buf[j] = avg;
    buf[ny - j] = std::conj(avg);
  }
  buf[0] = buf[0].real();
  buf[ny / 2] = buf[ny / 2].real();
  return buf;
}

std::vector<double> inverse_y(const GridSpec& grid, std::span<const Complex> coeffs) {
  require(coeffs.size() == static_cast<std::size_t>(grid.ny()), "inverse_y: length mismatch");
  std::vector<Complex> buf(coeffs.begin(), coeffs.end());
  y_origin_phase(buf, 1, grid.ny());
  fft::transform_1d(buf, fft::Direction::backward);
  std::vector<double> out(buf.size());
  for (std::size_t k = 0; k < buf.size(); ++k) out[k] = buf[k].real();
  return out;
}

}  // namespace couette::spectral
