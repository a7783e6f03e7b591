#pragma once

#include "couette/lp/partition.hpp"
#include "couette/spectral/field.hpp"

namespace couette::lp {

struct ParaproductTriple {
  spectral::SpectralField tfg;       // sum_b S_(b-2) f * Delta_b g
  spectral::SpectralField tstar_gf;  // fg - T_f g
  spectral::SpectralField product;   // fg
};

// Pointwise product of two fields in the same frame, transformed back and
// truncated to the dealias mask.
spectral::SpectralField dealiased_product(const spectral::SpectralField& f, const spectral::SpectralField& g);

// T_f g = sum over blocks b >= 2 of (blocks 0..b-2 of f)(block b of g); on the
// circle that is sum_{j >= 1} S_{j-1} f Delta_j g. Each product is dealiased.
ParaproductTriple bony(const spectral::SpectralField& f, const spectral::SpectralField& g,
                       const DyadicPartition& p);

}  // namespace couette::lp
