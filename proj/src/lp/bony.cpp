#include "couette/lp/bony.hpp"

#include <algorithm>

#include "couette/core/error.hpp"
#include "couette/spectral/transform.hpp"

namespace couette::lp {

using spectral::SpectralField;

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g) {
  require(f.same_grid(g), "dealiased_product: fields live on different grids");
  require(f.frame() == g.frame(), "dealiased_product: fields are in different frames");
  std::vector<double> a = spectral::transform_inverse(f);
  const std::vector<double> b = spectral::transform_inverse(g);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
  SpectralField out = spectral::transform_forward(f.grid_ptr(), a, f.frame());
  out.apply_mask();
  return out;
}

ParaproductTriple bony(const SpectralField& f, const SpectralField& g, const DyadicPartition& p) {
  require(f.same_grid(g), "bony: fields live on different grids");
  ParaproductTriple out;
  out.tfg = SpectralField(f.grid_ptr(), f.frame());
  for (int b = 2; b <= p.j_max; ++b) {
    const SpectralField gb = lp_block(g, b, p);
    if (std::all_of(gb.coeffs().begin(), gb.coeffs().end(), [](Complex c) { return c == Complex{}; }))
      continue;
    out.tfg += dealiased_product(lp_low_pass(f, b - 2, p), gb);
  }
  out.product = dealiased_product(f, g);
  out.tstar_gf = out.product - out.tfg;
  return out;
}

}  // namespace couette::lp
