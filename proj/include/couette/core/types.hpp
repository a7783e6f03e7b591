#pragma once

#include <complex>
#include <numbers>

namespace couette {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kE = std::numbers::e;

}  // namespace couette
