#pragma once

#include "lgcp/circulant.hpp"
#include "lgcp/grid.hpp"
#include "lgcp/rng.hpp"

namespace lgcp {

// Stationary isotropic covariance cov(d) = sigma^2 r(d / phi). Exponential
// is Matern with nu = 1/2; the Matern kinds use the half-integer closed
// forms with kappa = sqrt(2 nu) / phi.
struct CovarianceModel {
  enum class Kind { Exponential, Matern };

  Kind kind = Kind::Exponential;
  double sigma = 1.0;
  double phi = 0.1;
  double nu = 0.5;  // one of 1/2, 3/2, 5/2; meaningful for Matern only

  static CovarianceModel exponential(double sigma, double phi);
  static CovarianceModel matern(double nu, double sigma, double phi);

  double operator()(double distance) const;
  double variance() const { return sigma * sigma; }
  // Mean of the log-intensity residual field, fixed so E[exp(Y)] = 1.
  double field_mean() const { return -0.5 * sigma * sigma; }
};

// Log-intensity residual field on the extended lattice.
struct FieldState {
  GridSpec grid;
  Grid y_ext;
  double mean = 0.0;
};

// Whitened coordinates: under the prior the entries are i.i.d. N(0, 1).
struct WhiteNoiseState {
  GridSpec grid;
  Grid gamma;
};

// Covariance base matrix on the torus: base(i, j) = cov(toral distance from
// the origin cell). Throws NeedLargerExtension when the embedding is not
// positive definite on this lattice.
CirculantBase cov_base(const CovarianceModel& model, const GridSpec& grid,
                       Exec exec = Exec::Parallel);

WhiteNoiseState draw_white_noise(const GridSpec& grid, Rng& rng);

// y_ext = mean + Sigma^{1/2} gamma.
FieldState sample_field(const CirculantOperator& cov, const WhiteNoiseState& gamma, double mean);

// Inverse of sample_field: gamma = Sigma^{-1/2} (y_ext - mean).
WhiteNoiseState whiten(const CirculantOperator& cov, const FieldState& field);

}  // namespace lgcp
