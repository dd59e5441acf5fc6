#pragma once

namespace lgcp {

// Standard normal cumulative distribution function.
double normal_cdf(double x);

// Inverse of the standard normal CDF for p in (0, 1). Rational initial
// guess refined by one Halley step; relative error well below 1e-9.
double normal_quantile(double p);

}  // namespace lgcp
