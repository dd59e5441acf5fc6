#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lgcp/circulant.hpp"
#include "lgcp/grid.hpp"

namespace lgcp {

// GMRF parameter vector for a box neighbourhood of the given order. One
// coefficient per displacement class {(di, dj) : 0 <= dj <= di <= nbhd},
// giving 3, 6 and 10 classes for orders 1, 2 and 3.
struct NeighbourhoodTheta {
  int nbhd = 1;
  std::vector<double> theta;

  NeighbourhoodTheta() = default;
  NeighbourhoodTheta(int nbhd_order, std::vector<double> values);

  static int class_count(int nbhd);
  // Representative displacements, class (0,0) first, then ordered by
  // (di, dj) lexicographically.
  static const std::vector<std::pair<int, int>>& classes(int nbhd);
  // All lattice displacements equivalent to class (di, dj) under the
  // symmetries of the square (axial reflections and diagonal swap).
  static std::vector<std::pair<int, int>> class_displacements(int di, int dj);

  // The optimiser start: the base of the diagonal precision diag(1/sigma2).
  static NeighbourhoodTheta diagonal_start(int nbhd, double sigma2);
};

// Base matrix of the block-circulant precision induced by theta: each
// coefficient is placed at every lattice displacement of its symmetry
// class, wrapped toroidally.
CirculantBase precision_base(const NeighbourhoodTheta& theta, const GridSpec& grid);

// Base of the covariance implied by theta, computed spectrally as the
// elementwise inverse of the precision spectrum. Throws InfeasibleTheta
// when the precision spectrum is not positive.
CirculantBase implied_cov_base(const NeighbourhoodTheta& theta, const GridSpec& grid,
                               Exec exec = Exec::Parallel);

struct FitConfig {
  enum class Optimizer { QuasiNewton, Simplex };

  double weight_a = 1.0;  // the constant a in the discrepancy weights
  Optimizer optimizer = Optimizer::QuasiNewton;
  int max_iter = 500;
  double grad_tol = 1e-6;  // on the gradient infinity norm, relative to 1 + |U|
  double feasibility_floor = 1e-10;
  double penalty = 1e12;
  int simplex_polish_evals = 2000;
};

struct FitResult {
  NeighbourhoodTheta theta_opt;
  double u_final = 0.0;
  int iterations = 0;
  bool converged = false;
  double min_eigenvalue = 0.0;  // of the precision spectrum at the optimum
  bool simplex_used = false;
};

// Weighted discrepancy between the target covariance base and the one
// implied by theta. Infeasible theta yields a finite penalty value.
double objective_U(const NeighbourhoodTheta& theta, const CirculantBase& target,
                   const FitConfig& cfg);

// Analytic gradient of objective_U; throws InfeasibleTheta off the feasible set.
std::vector<double> gradient_U(const NeighbourhoodTheta& theta, const CirculantBase& target,
                               const FitConfig& cfg);

// Fits a neighbourhood-nbhd precision base to the target covariance base.
// Quasi-Newton from the diagonal start with an automatic simplex fallback;
// deterministic given (target, cfg).
FitResult fit(const CirculantBase& target, int nbhd, const FitConfig& cfg = {});

struct ApproximationMse {
  double mse = 0.0;
  double bias = 0.0;
};

// Monte-Carlo field-simulation error of the fitted GMRF against the target
// covariance: y and y~ are generated from the same white-noise draws and
// compared over the observation window.
ApproximationMse approximation_mse(const CirculantBase& target, const NeighbourhoodTheta& theta,
                                   int n_draws, std::uint64_t seed, Exec exec = Exec::Parallel);

}  // namespace lgcp
