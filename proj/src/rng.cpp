#include "lgcp/rng.hpp"

#include <cmath>

namespace lgcp {

namespace {

// Knuth's multiplication method; exact for small means.
long poisson_inversion(Rng& rng, double mean) {
  const double limit = std::exp(-mean);
  long k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= rng.uniform();
  } while (p > limit);
  return k - 1;
}

// Hoermann's transformed rejection with squeeze (PTRS), valid for mean >= 10.
long poisson_ptrs(Rng& rng, double mean) {
  const double log_mean = std::log(mean);
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) {
      return static_cast<long>(kf);
    }
    if (kf < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = -mean + kf * log_mean - std::lgamma(kf + 1.0);
    if (lhs <= rhs) {
      return static_cast<long>(kf);
    }
  }
}

}  // namespace

long Rng::poisson(double mean) {
  if (!(mean > 0.0)) {
    return 0;
  }
  if (mean < 10.0) {
    return poisson_inversion(*this, mean);
  }
  return poisson_ptrs(*this, mean);
}

}  // namespace lgcp
