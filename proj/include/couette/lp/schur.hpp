#pragma once

#include <functional>
#include <span>
#include <vector>

namespace couette::lp {

using Kernel = std::function<double(int j, int jp)>;

// K(j, j') = 2^(j+j') / (2^(2j) + 2^(2j')), the kernel behind the L2_t Linf
// estimate of the linear flow.
double dyadic_kernel(int j, int jp);

// (T f)(j) = sum_j' K(j, j') f(j') on the index square 0..n-1, n = f.size().
// Throws InvalidArgument on a negative kernel value.
std::vector<double> schur_apply(const Kernel& kernel, std::span<const double> f);

// max(sup_j sum_j' K(j, j'), sup_j' sum_j K(j, j')) over 0..j_max.
double schur_bound(const Kernel& kernel, int j_max);

}  // namespace couette::lp
