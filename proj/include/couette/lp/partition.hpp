#pragma once

#include "couette/spectral/field.hpp"

namespace couette::lp {

// circle: blocks act on |alpha| only (Littlewood-Paley on T, every y line).
// plane: blocks act on |xi| = sqrt(alpha^2 + eta^2) with the field's physical eta.
enum class Dimension { circle, plane };

// Radial dyadic partition built from one bump. chi(r) = 1 for r <= 3/4 and 0
// for r >= 4/3, joined by a quintic smoothstep (C^2); phi(r) = chi(r/2) - chi(r).
//
// Blocks are numbered from 0: block 0 is chi, block b >= 1 is phi(2^-(b-1) r).
// On the plane this is the usual indexing. On the circle block b is
// Delta_{b-1}, so block 0 is Delta_{-1}.
struct DyadicPartition {
  Dimension dimension = Dimension::circle;
  int j_max = 1;

  double chi(double r) const;
  double phi(double r) const;
  // Symbol of block b at radius r; zero for b > j_max.
  double block(int b, double r) const;
  // Sum of blocks 0..m (the low-pass S), equal to chi(2^-m r).
  double low_pass(int m, double r) const;
  // Sum of all blocks; 1 for r <= 3/4 * 2^j_max.
  double total(double r) const;
};

// Throws InvalidArgument for j_max < 1.
DyadicPartition build_partition(Dimension dimension, int j_max);

// Also rejects a j_max whose finest block lies wholly beyond the largest
// frequency the grid represents.
DyadicPartition build_partition(Dimension dimension, int j_max, const spectral::GridSpec& grid);

// Smallest j_max whose blocks sum to one at every frequency of the grid.
int covering_j_max(Dimension dimension, const spectral::GridSpec& grid);
DyadicPartition partition_for(Dimension dimension, const spectral::GridSpec& grid);

// Largest |xi| (or |alpha|) over all grid slots, Nyquist included.
double max_frequency(Dimension dimension, const spectral::GridSpec& grid);

// max |total(r) - 1| over every grid frequency.
double partition_residual(const DyadicPartition& p, const spectral::GridSpec& grid);

spectral::SpectralField lp_block(const spectral::SpectralField& f, int b, const DyadicPartition& p);
spectral::SpectralField lp_low_pass(const spectral::SpectralField& f, int m, const DyadicPartition& p);

}  // namespace couette::lp
