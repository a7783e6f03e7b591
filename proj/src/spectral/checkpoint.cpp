#include "couette/spectral/checkpoint.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "couette/core/error.hpp"

namespace couette::spectral {

namespace {

constexpr std::array<char, 4> kMagic{'C', 'E', 'D', '1'};

template <class T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), bytes.size())) throw IoError("checkpoint: truncated stream");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_checkpoint(std::ostream& out, const SpectralField& field, double time) {
  const auto& g = field.grid();
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.nx()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.ny()));
  put<double>(out, g.ly());
  put<std::uint8_t>(out, field.frame().kind == FrameKind::sheared ? 1 : 0);
  put<double>(out, field.frame().shear);
  put<double>(out, time);
  for (const Complex& c : field.coeffs()) {
    put<double>(out, c.real());
    put<double>(out, c.imag());
  }
  if (!out) throw IoError("checkpoint: write failed");
}

void write_checkpoint(const std::filesystem::path& path, const SpectralField& field, double time) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("checkpoint: cannot open " + path.string());
  write_checkpoint(out, field, time);
}

Checkpoint read_checkpoint(std::istream& in, double dealias_fraction) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    throw IoError("checkpoint: bad magic");
  const auto nx = get<std::uint32_t>(in);
  const auto ny = get<std::uint32_t>(in);
  const auto ly = get<double>(in);
  const auto kind = get<std::uint8_t>(in);
  const auto shear = get<double>(in);
  const auto time = get<double>(in);
  if (kind > 1) throw IoError("checkpoint: unknown frame tag");
  auto grid = make_grid(static_cast<int>(nx), static_cast<int>(ny), ly, dealias_fraction);
  std::vector<Complex> coeffs(grid->size());
  for (auto& c : coeffs) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    c = {re, im};
  }
  const Frame frame = kind == 1 ? Frame::sheared(shear) : Frame::stationary();
  return {SpectralField(grid, std::move(coeffs), frame), time};
}

Checkpoint read_checkpoint(const std::filesystem::path& path, double dealias_fraction) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("checkpoint: cannot open " + path.string());
  return read_checkpoint(in, dealias_fraction);
}

}  // namespace couette::spectral
