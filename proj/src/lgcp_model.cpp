#include "lgcp/lgcp_model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace lgcp {

namespace {

constexpr double kExpClamp = 700.0;

}  // namespace

void IntensitySurface::normalise() {
  double mass = 0.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    mass += lambda[k];
  }
  mass *= grid.cell_area();
  if (!(mass > 0.0)) {
    throw Error("IntensitySurface: total mass must be positive");
  }
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    lambda[k] /= mass;
  }
}

long CellCounts::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0L);
}

IntensitySurface build_lambda(const std::vector<std::array<double, 2>>& points, double bandwidth,
                              const GridSpec& grid) {
  if (points.empty()) {
    throw Error("build_lambda: point list is empty");
  }
  if (!(bandwidth > 0.0)) {
    throw Error("build_lambda: bandwidth must be positive");
  }
  const int m = grid.window_cells;
  const double inv_two_bw2 = 1.0 / (2.0 * bandwidth * bandwidth);
  Grid lambda(m);
  for (int i = 0; i < m; ++i) {
    const double cy = grid.centroid_y(i);
    for (int j = 0; j < m; ++j) {
      const double cx = grid.centroid_x(j);
      double acc = 0.0;
      for (const auto& p : points) {
        const double dx = cx - p[0];
        const double dy = cy - p[1];
        acc += std::exp(-(dx * dx + dy * dy) * inv_two_bw2);
      }
      lambda(i, j) = acc;
    }
  }
  IntensitySurface surface{grid, std::move(lambda)};
  surface.normalise();
  return surface;
}

SimulationResult simulate_scenario(const Scenario& sc, Rng& rng) {
  if (!(sc.mu > 0.0)) {
    throw Error("simulate_scenario: mu must be positive");
  }
  const CirculantOperator cov(cov_base(sc.cov, sc.grid));
  const WhiteNoiseState gamma = draw_white_noise(sc.grid, rng);
  FieldState truth = sample_field(cov, gamma, sc.cov.field_mean());

  const int m = sc.grid.window_cells;
  const double ca = sc.grid.cell_area();
  CellCounts data{sc.grid, std::vector<long>(static_cast<std::size_t>(m) * m, 0)};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double mean = sc.mu * ca * sc.surface.lambda(i, j) * std::exp(truth.y_ext(i, j));
      data.counts[static_cast<std::size_t>(i) * m + j] = rng.poisson(mean);
    }
  }
  return SimulationResult{std::move(truth), std::move(data)};
}

WhitenedTarget::WhitenedTarget(const CellCounts& data, const Scenario& sc,
                               const CirculantOperator& cov)
    : grid_(sc.grid), cov_(cov), mean_(sc.cov.field_mean()) {
  if (data.grid != sc.grid || cov.grid() != sc.grid) {
    throw Error("WhitenedTarget: data, scenario and covariance grids disagree");
  }
  const int n = grid_.side();
  const int m = grid_.window_cells;
  const double scale = sc.mu * grid_.cell_area();
  weighted_lambda_ext_ = Grid(n, 0.0);
  counts_ext_ = Grid(n, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      weighted_lambda_ext_(i, j) = scale * sc.surface.lambda(i, j);
      counts_ext_(i, j) = static_cast<double>(data(i, j));
    }
  }
}

WhitenedTarget::Eval WhitenedTarget::evaluate(const Grid& gamma, Workspace& ws) const {
  const int n = grid_.side();
  if (gamma.side() != n) {
    throw Error("WhitenedTarget: gamma has side " + std::to_string(gamma.side()) + ", expected " +
                std::to_string(n));
  }
  Eval ev;
  cov_.sqrt_matvec(gamma, ev.y_ext, ws);

  double prior = 0.0;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    ev.y_ext[k] += mean_;
    prior += gamma[k] * gamma[k];
  }

  // Likelihood terms live on the window; the residual grid is zero
  // elsewhere so the spectral product below realises the chain rule.
  double lik = 0.0;
  Grid residual(n, 0.0);
  const int m = grid_.window_cells;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double y = ev.y_ext(i, j);
      double e = y;
      if (e > kExpClamp) {
        e = kExpClamp;
        ++ev.clamped;
      }
      const double rate = weighted_lambda_ext_(i, j) * std::exp(e);
      lik += y * counts_ext_(i, j) - rate;
      residual(i, j) = counts_ext_(i, j) - rate;
    }
  }
  ev.log_target = -0.5 * prior + lik;

  cov_.sqrt_matvec(residual, ev.grad, ws);
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    ev.grad[k] -= gamma[k];
  }
  return ev;
}

double WhitenedTarget::log_target_only(const Grid& gamma, Workspace& ws) const {
  Grid y_ext;
  cov_.sqrt_matvec(gamma, y_ext, ws);
  double prior = 0.0;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    y_ext[k] += mean_;
    prior += gamma[k] * gamma[k];
  }
  double lik = 0.0;
  const int m = grid_.window_cells;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double y = y_ext(i, j);
      const double rate = weighted_lambda_ext_(i, j) * std::exp(std::min(y, kExpClamp));
      lik += y * counts_ext_(i, j) - rate;
    }
  }
  return -0.5 * prior + lik;
}

double log_target(const Grid& gamma, const CellCounts& data, const Scenario& sc,
                  const CirculantOperator& cov) {
  WhitenedTarget target(data, sc, cov);
  Workspace ws;
  return target.log_target_only(gamma, ws);
}

Grid grad_log_target(const Grid& gamma, const CellCounts& data, const Scenario& sc,
                     const CirculantOperator& cov) {
  WhitenedTarget target(data, sc, cov);
  Workspace ws;
  return target.evaluate(gamma, ws).grad;
}

}  // namespace lgcp
