#pragma once

#include <cstdint>
#include <vector>

#include "lgcp/circulant.hpp"
#include "lgcp/grid.hpp"
#include "lgcp/lgcp_model.hpp"
#include "lgcp/quantiles.hpp"
#include "lgcp/rng.hpp"

namespace lgcp {

struct ChainConfig {
  long n_iter = 100000;
  long burn_in = 10000;
  long thin = 90;
  double h_init = 1.0;
  double target_accept = 0.574;
  double adapt_c = 1.0;    // C in eta_i = C / i^adapt_exp
  double adapt_exp = 0.5;  // in (0.5, 1]
  double h_floor = 1e-10;

  long retained() const { return (n_iter - burn_in) / thin; }
  void validate() const;
};

struct ChainOutput {
  GridSpec grid;
  long retained = 0;
  // retained x M x M field samples over the window, sample-major.
  std::vector<double> samples;
  std::vector<double> accept_trace;  // acceptance probability per iteration
  std::vector<double> h_trace;       // step size per iteration, post-update
  double final_h = 0.0;
  Grid lag1;  // per-cell lag-1 autocorrelation of the retained samples, M x M
  long clamp_warnings = 0;
  long accepted = 0;

  // Mean acceptance probability over the trailing fraction of iterations.
  double mean_accept_tail(double fraction) const;
  // Posterior mean of the retained field samples, M x M.
  Grid posterior_mean() const;
};

// Langevin proposal: gamma + (h^2/2) grad + h z, z i.i.d. standard normal.
Grid propose(const Grid& gamma, const Grid& grad, double h, Rng& rng);

// Metropolis-Hastings acceptance probability with the asymmetric Langevin
// correction. Non-finite targets reject.
double accept_prob(const Grid& gamma, const Grid& gamma_prime, const CellCounts& data,
                   const Scenario& sc, const CirculantOperator& cov, double h);

// Robbins-Monro step-size update with eta_i = C / i^exp, floored away from
// zero; iteration is 1-based and alpha is the per-step acceptance
// probability.
double adapt_h(double h, double accept_probability, long iteration, const ChainConfig& cfg);

// Runs the adaptive MALA chain from gamma = 0, retaining thinned field
// samples over the window after burn-in. Deterministic given the rng seed.
ChainOutput run_chain(const CellCounts& data, const Scenario& sc, const CirculantOperator& cov,
                      const ChainConfig& cfg, Rng& rng);

// Per-cell empirical quantiles of the retained samples.
QuantileSummary chain_quantiles(const ChainOutput& out, const std::vector<double>& ladder);

}  // namespace lgcp
