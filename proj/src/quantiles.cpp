#include "lgcp/quantiles.hpp"

#include <algorithm>
#include <cmath>

#include "lgcp/errors.hpp"

namespace lgcp {

const std::vector<double>& QuantileSummary::default_ladder() {
  static const std::vector<double> ladder = {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                             0.6,  0.7,  0.8, 0.9, 0.95, 0.99};
  return ladder;
}

QuantileSummary empirical_quantiles(const std::vector<double>& samples, int n_samples,
                                    int window_side, const std::vector<double>& ladder,
                                    fft::Exec exec) {
  if (n_samples < 2) {
    throw Error("empirical_quantiles: need at least two samples");
  }
  const std::size_t cells = static_cast<std::size_t>(window_side) * window_side;
  if (samples.size() != cells * static_cast<std::size_t>(n_samples)) {
    throw Error("empirical_quantiles: sample cube size mismatch");
  }
  for (std::size_t k = 1; k < ladder.size(); ++k) {
    if (!(ladder[k] > ladder[k - 1])) {
      throw Error("empirical_quantiles: ladder must be strictly increasing");
    }
  }

  QuantileSummary out;
  out.q = ladder;
  out.window_side = window_side;
  out.c.assign(ladder.size() * cells, 0.0);

  const bool par = exec == fft::Exec::Parallel;
#pragma omp parallel if (par)
  {
    std::vector<double> column(n_samples);
#pragma omp for schedule(static)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(cells); ++s) {
      for (int t = 0; t < n_samples; ++t) {
        column[t] = samples[static_cast<std::size_t>(t) * cells + s];
      }
      std::sort(column.begin(), column.end());
      for (std::size_t k = 0; k < ladder.size(); ++k) {
        const double pos = ladder[k] * (n_samples - 1);
        const int lo = static_cast<int>(std::floor(pos));
        const int hi = std::min(lo + 1, n_samples - 1);
        const double frac = pos - lo;
        out.c[k * cells + s] = column[lo] + frac * (column[hi] - column[lo]);
      }
    }
  }
  return out;
}

}  // namespace lgcp
