#pragma once

#include <vector>

#include "lgcp/circulant.hpp"
#include "lgcp/grid.hpp"
#include "lgcp/lgcp_model.hpp"
#include "lgcp/quantiles.hpp"

namespace lgcp {

struct GaussianApproxConfig {
  double tau = 1.0;         // fixed precision scaling of the GMRF prior
  double newton_tol = 1e-8;  // on the gradient infinity norm
  int max_newton = 50;
  int max_halvings = 30;
};

// Gaussian approximation to the posterior at its mode: the mode of the
// full conditional and the exact marginal standard deviations of the
// Gaussian with covariance H^{-1}, H the negative Hessian at the mode.
struct ModeResult {
  GridSpec grid;
  Grid mode;         // Y* on the extended lattice
  Grid marginal_sd;  // M x M over the window
  int newton_iters = 0;
  bool converged = false;
};

// Maximises the GMRF-prior posterior by Newton iterations with
// step-halving; linear solves use a sparse Cholesky factorisation. The
// marginal variances are selected-inverse diagonals computed per window
// cell against the factorisation at the mode.
ModeResult find_mode(const CellCounts& data, const Scenario& sc, const CirculantBase& precision,
                     const GaussianApproxConfig& cfg = {}, Exec exec = Exec::Parallel);

// c_k(s) = mode(s) + sd(s) * Phi^{-1}(q_k) over the window cells.
QuantileSummary gaussian_quantiles(const ModeResult& mode, const std::vector<double>& ladder);

}  // namespace lgcp
