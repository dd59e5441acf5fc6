#include "lgcp/mala.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lgcp {

void ChainConfig::validate() const {
  if (burn_in < 0 || burn_in >= n_iter) {
    throw Error("ChainConfig: burn_in must lie in [0, n_iter)");
  }
  if (thin < 1) {
    throw Error("ChainConfig: thin must be >= 1");
  }
  if (retained() < 2) {
    throw Error("ChainConfig: fewer than two retained samples");
  }
  if (!(h_init > 0.0)) {
    throw Error("ChainConfig: h_init must be positive");
  }
  if (!(target_accept > 0.0) || !(target_accept < 1.0)) {
    throw Error("ChainConfig: target acceptance must lie in (0, 1)");
  }
  if (!(adapt_exp > 0.5) || adapt_exp > 1.0) {
    throw Error("ChainConfig: adaptation exponent must lie in (0.5, 1]");
  }
}

double ChainOutput::mean_accept_tail(double fraction) const {
  const std::size_t n = accept_trace.size();
  const std::size_t tail = std::max<std::size_t>(1, static_cast<std::size_t>(n * fraction));
  double acc = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) {
    acc += accept_trace[i];
  }
  return acc / tail;
}

Grid ChainOutput::posterior_mean() const {
  const int m = grid.window_cells;
  const std::size_t cells = static_cast<std::size_t>(m) * m;
  Grid mean(m, 0.0);
  for (long t = 0; t < retained; ++t) {
    const double* s = samples.data() + static_cast<std::size_t>(t) * cells;
    for (std::size_t k = 0; k < cells; ++k) {
      mean[k] += s[k];
    }
  }
  for (std::size_t k = 0; k < cells; ++k) {
    mean[k] /= static_cast<double>(retained);
  }
  return mean;
}

Grid propose(const Grid& gamma, const Grid& grad, double h, Rng& rng) {
  if (!(h > 0.0)) {
    throw Error("propose: step size must be positive");
  }
  Grid out(gamma.side());
  const double drift = 0.5 * h * h;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    out[k] = gamma[k] + drift * grad[k] + h * rng.normal();
  }
  return out;
}

namespace {

// log q(a -> b) up to the constant that cancels in the Hastings ratio.
double log_proposal_density(const Grid& from, const Grid& to, const Grid& grad_from, double h) {
  const double drift = 0.5 * h * h;
  double sq = 0.0;
  for (std::size_t k = 0; k < from.size(); ++k) {
    const double r = to[k] - from[k] - drift * grad_from[k];
    sq += r * r;
  }
  return -sq / (2.0 * h * h);
}

}  // namespace

double accept_prob(const Grid& gamma, const Grid& gamma_prime, const CellCounts& data,
                   const Scenario& sc, const CirculantOperator& cov, double h) {
  WhitenedTarget target(data, sc, cov);
  Workspace ws;
  const auto cur = target.evaluate(gamma, ws);
  const auto prop = target.evaluate(gamma_prime, ws);
  if (!std::isfinite(prop.log_target)) {
    return 0.0;
  }
  const double log_ratio = prop.log_target - cur.log_target +
                           log_proposal_density(gamma_prime, gamma, prop.grad, h) -
                           log_proposal_density(gamma, gamma_prime, cur.grad, h);
  return std::min(1.0, std::exp(log_ratio));
}

double adapt_h(double h, double accept_probability, long iteration, const ChainConfig& cfg) {
  if (iteration < 1) {
    throw Error("adapt_h: iteration is 1-based");
  }
  const double eta = cfg.adapt_c / std::pow(static_cast<double>(iteration), cfg.adapt_exp);
  return std::max(cfg.h_floor, h + eta * (accept_probability - cfg.target_accept));
}

ChainOutput run_chain(const CellCounts& data, const Scenario& sc, const CirculantOperator& cov,
                      const ChainConfig& cfg, Rng& rng) {
  cfg.validate();
  const GridSpec& grid = sc.grid;
  const int n = grid.side();
  const int m = grid.window_cells;
  const std::size_t window_cells = static_cast<std::size_t>(m) * m;

  WhitenedTarget target(data, sc, cov);
  Workspace ws;

  ChainOutput out;
  out.grid = grid;
  out.retained = cfg.retained();
  out.samples.assign(static_cast<std::size_t>(out.retained) * window_cells, 0.0);
  out.accept_trace.assign(cfg.n_iter, 0.0);
  out.h_trace.assign(cfg.n_iter, 0.0);

  Grid gamma(n, 0.0);
  auto cur = target.evaluate(gamma, ws);
  out.clamp_warnings += cur.clamped;

  double h = cfg.h_init;
  long stored = 0;
  Grid gamma_prime(n);

  for (long iter = 1; iter <= cfg.n_iter; ++iter) {
    const double drift = 0.5 * h * h;
    double forward_sq = 0.0;
    for (std::size_t k = 0; k < gamma.size(); ++k) {
      const double z = rng.normal();
      gamma_prime[k] = gamma[k] + drift * cur.grad[k] + h * z;
      forward_sq += z * z;  // ||gamma' - gamma - drift*grad||^2 / h^2
    }

    auto prop = target.evaluate(gamma_prime, ws);
    out.clamp_warnings += prop.clamped;

    double alpha = 0.0;
    if (std::isfinite(prop.log_target)) {
      double reverse_sq = 0.0;
      for (std::size_t k = 0; k < gamma.size(); ++k) {
        const double r = gamma[k] - gamma_prime[k] - drift * prop.grad[k];
        reverse_sq += r * r;
      }
      const double log_ratio = prop.log_target - cur.log_target +
                               (-reverse_sq / (2.0 * h * h)) - (-0.5 * forward_sq);
      alpha = std::min(1.0, std::exp(log_ratio));
    }

    if (rng.uniform() < alpha) {
      std::swap(gamma, gamma_prime);
      cur = std::move(prop);
      ++out.accepted;
    }

    out.accept_trace[iter - 1] = alpha;
    h = adapt_h(h, alpha, iter, cfg);
    out.h_trace[iter - 1] = h;

    if (iter > cfg.burn_in && (iter - cfg.burn_in) % cfg.thin == 0 && stored < out.retained) {
      double* dst = out.samples.data() + static_cast<std::size_t>(stored) * window_cells;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          dst[static_cast<std::size_t>(i) * m + j] = cur.y_ext(i, j);
        }
      }
      ++stored;
    }
  }
  out.final_h = h;

  // Lag-1 autocorrelation of the retained series, one cell at a time.
  out.lag1 = Grid(m, 0.0);
  const long t_count = out.retained;
  for (std::size_t s = 0; s < window_cells; ++s) {
    double mean = 0.0;
    for (long t = 0; t < t_count; ++t) {
      mean += out.samples[static_cast<std::size_t>(t) * window_cells + s];
    }
    mean /= static_cast<double>(t_count);
    double num = 0.0;
    double den = 0.0;
    double prev = out.samples[s] - mean;
    den += prev * prev;
    for (long t = 1; t < t_count; ++t) {
      const double curdev = out.samples[static_cast<std::size_t>(t) * window_cells + s] - mean;
      num += prev * curdev;
      den += curdev * curdev;
      prev = curdev;
    }
    out.lag1[s] = den > 0.0 ? num / den : 0.0;
  }
  return out;
}

QuantileSummary chain_quantiles(const ChainOutput& out, const std::vector<double>& ladder) {
  return empirical_quantiles(out.samples, static_cast<int>(out.retained), out.grid.window_cells,
                             ladder);
}

}  // namespace lgcp
