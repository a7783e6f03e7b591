#pragma once

#include <span>

#include "couette/core/types.hpp"

namespace couette::spectral::fft {

enum class Direction { forward, backward };

// Unnormalized in-place transforms. forward uses exp(-i k x), backward exp(+i k x).
// Plans are cached process-wide; execution is reentrant.
void transform_2d(std::span<Complex> data, int nx, int ny, Direction dir);
// ny-point transform of each of the nx contiguous rows.
void transform_rows(std::span<Complex> data, int nx, int ny, Direction dir);
void transform_1d(std::span<Complex> data, Direction dir);

}  // namespace couette::spectral::fft
