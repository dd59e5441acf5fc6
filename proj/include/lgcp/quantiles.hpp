#pragma once

#include <vector>

#include "lgcp/fft.hpp"

namespace lgcp {

// Per-cell posterior thresholds c_k(s) over an M x M window for a fixed
// probability ladder. Produced by both the sampler and the Gaussian
// comparator so that the metrics treat the two interchangeably.
struct QuantileSummary {
  std::vector<double> q;  // probability ladder, increasing
  int window_side = 0;    // M
  std::vector<double> c;  // q.size() x M x M, k-major row-major

  double at(int k, int i, int j) const {
    return c[(static_cast<std::size_t>(k) * window_side + i) * window_side + j];
  }
  double& at(int k, int i, int j) {
    return c[(static_cast<std::size_t>(k) * window_side + i) * window_side + j];
  }

  // The 13-point ladder used throughout.
  static const std::vector<double>& default_ladder();
};

// Per-cell empirical quantiles by linear interpolation between order
// statistics. samples holds n_samples x M x M values, sample-major.
// Requires n_samples >= 2.
QuantileSummary empirical_quantiles(const std::vector<double>& samples, int n_samples,
                                    int window_side, const std::vector<double>& ladder,
                                    fft::Exec exec = fft::Exec::Parallel);

}  // namespace lgcp
