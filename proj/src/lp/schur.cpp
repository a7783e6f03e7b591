#include "couette/lp/schur.hpp"

#include <algorithm>
#include <cmath>

#include "couette/core/error.hpp"

namespace couette::lp {

namespace {

double checked(const Kernel& kernel, int j, int jp) {
  const double k = kernel(j, jp);
  if (!(k >= 0)) throw InvalidArgument("schur: kernel value at (" + std::to_string(j) + ", " +
                                       std::to_string(jp) + ") is negative or NaN");
  return k;
}

}  // namespace

double dyadic_kernel(int j, int jp) {
  // Divided through by 2^(j+j') so large indices cannot overflow.
  const double r = std::ldexp(1.0, j - jp);
  return 1.0 / (r + 1.0 / r);
}

std::vector<double> schur_apply(const Kernel& kernel, std::span<const double> f) {
  const int n = static_cast<int>(f.size());
  std::vector<double> out(f.size(), 0.0);
  for (int j = 0; j < n; ++j)
    for (int jp = 0; jp < n; ++jp) out[j] += checked(kernel, j, jp) * f[jp];
  return out;
}

double schur_bound(const Kernel& kernel, int j_max) {
  require(j_max >= 0, "schur_bound: j_max must be >= 0");
  const int n = j_max + 1;
  std::vector<double> rows(n, 0.0), cols(n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int jp = 0; jp < n; ++jp) {
      const double k = checked(kernel, j, jp);
      rows[j] += k;
      cols[jp] += k;
    }
  return std::max(*std::max_element(rows.begin(), rows.end()), *std::max_element(cols.begin(), cols.end()));
}

}  // namespace couette::lp
