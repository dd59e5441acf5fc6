#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lgcp/circulant.hpp"
#include "lgcp/covariance.hpp"
#include "lgcp/grid.hpp"
#include "lgcp/rng.hpp"

namespace lgcp {

// Fixed spatial component over the window cells, scaled so the intensity
// integrates to one over the window.
struct IntensitySurface {
  GridSpec grid;
  Grid lambda;  // M x M

  // Enforces sum(lambda) * C_A == 1 by rescaling.
  void normalise();
};

// Generative configuration: intensity surface, expected event count,
// covariance of the residual field and the simulation seed.
struct Scenario {
  GridSpec grid;
  IntensitySurface surface;
  double mu = 0.0;  // expected number of events in the window
  CovarianceModel cov;
  std::uint64_t seed = 0;
  int id = 0;  // harness bookkeeping; 0 when standalone
};

// Events per window cell.
struct CellCounts {
  GridSpec grid;
  std::vector<long> counts;  // M x M row-major

  long operator()(int i, int j) const {
    return counts[static_cast<std::size_t>(i) * grid.window_cells + j];
  }
  long total() const;
};

// Gaussian kernel density of the given points, evaluated at cell centroids
// and normalised to unit mass over the window. No edge correction.
IntensitySurface build_lambda(const std::vector<std::array<double, 2>>& points, double bandwidth,
                              const GridSpec& grid);

struct SimulationResult {
  FieldState truth;
  CellCounts data;
};

// Draws the residual field by circulant embedding and cell counts as
// independent Poisson with mean mu * C_A * lambda(s) * exp(Y(s)).
SimulationResult simulate_scenario(const Scenario& sc, Rng& rng);

// Log density and gradient of the whitened posterior, shared by the sampler
// and exposed standalone for testing. Precomputes the zero-extended data
// grids once per (data, scenario) pair.
class WhitenedTarget {
 public:
  WhitenedTarget(const CellCounts& data, const Scenario& sc, const CirculantOperator& cov);

  struct Eval {
    double log_target = 0.0;
    Grid grad;
    Grid y_ext;
    long clamped = 0;  // exp arguments clamped at +700
  };

  // Log target, gradient and the field realisation at gamma.
  Eval evaluate(const Grid& gamma, Workspace& ws) const;
  double log_target_only(const Grid& gamma, Workspace& ws) const;

  double field_mean() const { return mean_; }
  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  const CirculantOperator& cov_;
  double mean_;
  Grid weighted_lambda_ext_;  // mu * C_A * lambda, zero off-window
  Grid counts_ext_;           // observed counts, zero off-window
};

// Whitened posterior log density at gamma (additive constant fixed at zero).
double log_target(const Grid& gamma, const CellCounts& data, const Scenario& sc,
                  const CirculantOperator& cov);

// Gradient of log_target with respect to gamma, on the extended lattice.
Grid grad_log_target(const Grid& gamma, const CellCounts& data, const Scenario& sc,
                     const CirculantOperator& cov);

}  // namespace lgcp
