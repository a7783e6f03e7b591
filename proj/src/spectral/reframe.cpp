#include "couette/spectral/reframe.hpp"

#include <cmath>

#include "couette/core/error.hpp"

namespace couette::spectral {

ReframeResult reframe(const SpectralField& f, double new_offset) {
  const auto& g = f.grid();
  const double shift = (f.frame().offset() - new_offset) / g.eta_step();
  const long unit = std::lround(shift);
  require(std::abs(shift - static_cast<double>(unit)) < 1e-9,
          "reframe: offset change times Ly/pi must be an integer");

  SpectralField out(f.grid_ptr(), Frame::sheared(new_offset));
  double total = 0, kept = 0;
  for (int i = 0; i < g.nx(); ++i) {
    const long a = g.alpha_label(i);
    for (int j = 0; j < g.ny(); ++j) {
      const double n = std::norm(f(i, j));
      total += n;
      if (n == 0) continue;
      const long dest = g.eta_label(j) - a * unit;
      if (dest < -g.ny() / 2 || dest >= g.ny() / 2) continue;
      const int jd = g.eta_index(static_cast<int>(dest));
      if (!g.kept(i, jd)) continue;
      out.at(i, jd) = f(i, j);
      kept += n;
    }
  }
  const double lost = total > 0 ? (total - kept) / total : 0.0;
  return {std::move(out), lost < 0 ? 0.0 : lost};
}

}  // namespace couette::spectral
