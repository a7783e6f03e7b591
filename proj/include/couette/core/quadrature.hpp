#pragma once

#include <span>

namespace couette {

// Composite Simpson on uniformly spaced samples. An even sample count closes
// with the 3/8 rule on the last three intervals; two samples fall back to the
// trapezoid rule.
double simpson(std::span<const double> values, double h);
double trapezoid(std::span<const double> values, double h);

// Supremum of a sampled function: the largest sample, raised to the vertex of
// the parabola through it and its neighbours when that maximum is interior.
double sampled_sup(std::span<const double> t, std::span<const double> values);

}  // namespace couette
