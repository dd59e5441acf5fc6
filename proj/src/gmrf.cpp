#include "lgcp/gmrf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "lgcp/optimize.hpp"
#include "lgcp/rng.hpp"

namespace lgcp {

NeighbourhoodTheta::NeighbourhoodTheta(int nbhd_order, std::vector<double> values)
    : nbhd(nbhd_order), theta(std::move(values)) {
  if (nbhd < 1 || nbhd > 3) {
    throw Error("NeighbourhoodTheta: order must be 1, 2 or 3");
  }
  if (static_cast<int>(theta.size()) != class_count(nbhd)) {
    throw Error("NeighbourhoodTheta: order " + std::to_string(nbhd) + " needs " +
                std::to_string(class_count(nbhd)) + " coefficients, got " +
                std::to_string(theta.size()));
  }
}

int NeighbourhoodTheta::class_count(int nbhd) { return (nbhd + 1) * (nbhd + 2) / 2; }

const std::vector<std::pair<int, int>>& NeighbourhoodTheta::classes(int nbhd) {
  static const std::vector<std::pair<int, int>> all = [] {
    std::vector<std::pair<int, int>> v;
    for (int di = 0; di <= 3; ++di) {
      for (int dj = 0; dj <= di; ++dj) {
        v.emplace_back(di, dj);
      }
    }
    return v;
  }();
  static const std::vector<std::vector<std::pair<int, int>>> per_order = [] {
    std::vector<std::vector<std::pair<int, int>>> v(4);
    for (int nb = 1; nb <= 3; ++nb) {
      for (const auto& c : all) {
        if (c.first <= nb) {
          v[nb].push_back(c);
        }
      }
    }
    return v;
  }();
  if (nbhd < 1 || nbhd > 3) {
    throw Error("NeighbourhoodTheta: order must be 1, 2 or 3");
  }
  return per_order[nbhd];
}

std::vector<std::pair<int, int>> NeighbourhoodTheta::class_displacements(int di, int dj) {
  std::set<std::pair<int, int>> out;
  const int signs[2] = {1, -1};
  for (int si : signs) {
    for (int sj : signs) {
      out.emplace(si * di, sj * dj);
      out.emplace(si * dj, sj * di);
    }
  }
  return {out.begin(), out.end()};
}

NeighbourhoodTheta NeighbourhoodTheta::diagonal_start(int nbhd, double sigma2) {
  std::vector<double> theta(class_count(nbhd), 0.0);
  theta[0] = 1.0 / sigma2;
  return NeighbourhoodTheta(nbhd, std::move(theta));
}

CirculantBase precision_base(const NeighbourhoodTheta& theta, const GridSpec& grid) {
  const int n = grid.side();
  Grid base(n, 0.0);
  const auto& cls = NeighbourhoodTheta::classes(theta.nbhd);
  for (std::size_t k = 0; k < cls.size(); ++k) {
    for (const auto& [a, b] : NeighbourhoodTheta::class_displacements(cls[k].first, cls[k].second)) {
      base(((a % n) + n) % n, ((b % n) + n) % n) = theta.theta[k];
    }
  }
  return CirculantBase(grid, std::move(base));
}

namespace {

// Spectrum of the precision base as a linear combination of precomputed
// class-indicator spectra, plus the machinery shared by U, its gradient and
// the fit loop.
class FitContext {
 public:
  FitContext(const CirculantBase& target, int nbhd, const FitConfig& cfg, Exec exec)
      : grid_(target.grid()),
        n_(target.grid().side()),
        cfg_(cfg),
        exec_(exec),
        plan_(n_),
        target_base_(target.base()) {
    const auto& cls = NeighbourhoodTheta::classes(nbhd);
    class_spectra_.reserve(cls.size());
    for (const auto& [di, dj] : cls) {
      // Unique wrapped cells of the class; displacements can alias on small
      // lattices and each cell carries the coefficient once.
      std::set<std::pair<int, int>> cells;
      for (const auto& [a, b] : NeighbourhoodTheta::class_displacements(di, dj)) {
        cells.emplace(((a % n_) + n_) % n_, ((b % n_) + n_) % n_);
      }
      Grid spec(n_);
      for (int p = 0; p < n_; ++p) {
        for (int q = 0; q < n_; ++q) {
          double acc = 0.0;
          for (const auto& [a, b] : cells) {
            acc += std::cos(2.0 * std::numbers::pi *
                            (static_cast<double>(p) * a + static_cast<double>(q) * b) / n_);
          }
          spec(p, q) = acc;
        }
      }
      class_spectra_.push_back(std::move(spec));
    }

    weights_ = Grid(n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (i == 0 && j == 0) {
          weights_(0, 0) = 1.0;
          continue;
        }
        const double dy = std::min(i, n_ - i);
        const double dx = std::min(j, n_ - j);
        const double d = std::sqrt(dx * dx + dy * dy);  // cell units
        weights_(i, j) = (1.0 + cfg.weight_a / d) / d;
      }
    }
  }

  int dim() const { return static_cast<int>(class_spectra_.size()); }

  // D =  sum_k theta_k D_k; returns its minimum.
  double precision_spectrum(const std::vector<double>& theta, Grid& out) const {
    out = Grid(n_, 0.0);
    for (std::size_t k = 0; k < class_spectra_.size(); ++k) {
      const double t = theta[k];
      if (t == 0.0) {
        continue;
      }
      const Grid& d = class_spectra_[k];
      for (std::size_t x = 0; x < out.size(); ++x) {
        out[x] += t * d[x];
      }
    }
    double min_v = out[0];
    for (std::size_t x = 1; x < out.size(); ++x) {
      min_v = std::min(min_v, out[x]);
    }
    return min_v;
  }

  // Implied covariance base from a feasible precision spectrum.
  Grid implied_cov(const Grid& spec) const {
    const std::size_t total = spec.size();
    std::vector<fft::cplx> buf(total);
    for (std::size_t x = 0; x < total; ++x) {
      buf[x] = fft::cplx(1.0 / spec[x], 0.0);
    }
    fft::idft2d(buf.data(), plan_, exec_);
    Grid out(n_);
    for (std::size_t x = 0; x < total; ++x) {
      out[x] = buf[x].real();
    }
    return out;
  }

  double penalty_value(double min_eig) const { return cfg_.penalty + std::fabs(min_eig) * cfg_.penalty; }

  double value(const std::vector<double>& theta) const {
    Grid spec;
    const double min_eig = precision_spectrum(theta, spec);
    if (min_eig <= cfg_.feasibility_floor) {
      return penalty_value(min_eig);
    }
    const Grid cov = implied_cov(spec);
    double u = 0.0;
    for (std::size_t x = 0; x < cov.size(); ++x) {
      const double r = target_base_[x] - cov[x];
      u += weights_[x] * r * r;
    }
    return u;
  }

  std::vector<double> gradient(const std::vector<double>& theta) const {
    Grid spec;
    const double min_eig = precision_spectrum(theta, spec);
    if (min_eig <= cfg_.feasibility_floor) {
      throw InfeasibleTheta("gradient_U: precision spectrum minimum " + std::to_string(min_eig) +
                            " is at or below the feasibility floor");
    }
    const Grid cov = implied_cov(spec);

    // W = w .* (target - cov); the chain rule contracts IDFT(-D^-2 .* D_k)
    // against W, evaluated in the spectral domain via Parseval.
    const std::size_t total = cov.size();
    std::vector<fft::cplx> w_hat(total);
    for (std::size_t x = 0; x < total; ++x) {
      w_hat[x] = fft::cplx(weights_[x] * (target_base_[x] - cov[x]), 0.0);
    }
    fft::dft2d(w_hat.data(), plan_, exec_);

    const double scale = 1.0 / (static_cast<double>(n_) * n_);
    std::vector<double> grad(class_spectra_.size(), 0.0);
    for (std::size_t k = 0; k < class_spectra_.size(); ++k) {
      const Grid& dk = class_spectra_[k];
      double acc = 0.0;
      for (std::size_t x = 0; x < total; ++x) {
        acc += w_hat[x].real() * dk[x] / (spec[x] * spec[x]);
      }
      grad[k] = 2.0 * scale * acc;
    }
    return grad;
  }

  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  int n_;
  FitConfig cfg_;
  Exec exec_;
  fft::Plan plan_;
  Grid target_base_;
  Grid weights_;
  std::vector<Grid> class_spectra_;
};

}  // namespace

CirculantBase implied_cov_base(const NeighbourhoodTheta& theta, const GridSpec& grid, Exec exec) {
  const CirculantBase prec = precision_base(theta, grid);
  const Spectrum spec = prec.spectrum(exec);
  const double min_eig = spec.min_value();
  if (min_eig <= 1e-10) {
    throw InfeasibleTheta("implied_cov_base: precision spectrum minimum " +
                          std::to_string(min_eig) + " is at or below the feasibility floor");
  }
  const int n = grid.side();
  std::vector<fft::cplx> buf(spec.values.size());
  for (std::size_t x = 0; x < buf.size(); ++x) {
    buf[x] = fft::cplx(1.0 / spec.values[x], 0.0);
  }
  fft::Plan plan(n);
  fft::idft2d(buf.data(), plan, exec);
  Grid out(n);
  for (std::size_t x = 0; x < buf.size(); ++x) {
    out[x] = buf[x].real();
  }
  return CirculantBase(grid, std::move(out));
}

double objective_U(const NeighbourhoodTheta& theta, const CirculantBase& target,
                   const FitConfig& cfg) {
  FitContext ctx(target, theta.nbhd, cfg, Exec::Parallel);
  return ctx.value(theta.theta);
}

std::vector<double> gradient_U(const NeighbourhoodTheta& theta, const CirculantBase& target,
                               const FitConfig& cfg) {
  FitContext ctx(target, theta.nbhd, cfg, Exec::Parallel);
  return ctx.gradient(theta.theta);
}

FitResult fit(const CirculantBase& target, int nbhd, const FitConfig& cfg) {
  FitContext ctx(target, nbhd, cfg, Exec::Parallel);
  const double sigma2 = target.base()(0, 0);
  if (!(sigma2 > 0.0)) {
    throw Error("fit: target base has non-positive variance at the origin");
  }
  NeighbourhoodTheta start = NeighbourhoodTheta::diagonal_start(nbhd, sigma2);

  auto value = [&ctx](const std::vector<double>& t) { return ctx.value(t); };
  auto gradient = [&ctx](const std::vector<double>& t) { return ctx.gradient(t); };

  FitResult out;
  std::vector<double> best_x = start.theta;
  double best_f = value(best_x);
  bool grad_converged = false;

  if (cfg.optimizer == FitConfig::Optimizer::QuasiNewton) {
    optimize::BfgsOptions bopt;
    bopt.max_iter = cfg.max_iter;
    bopt.grad_tol = cfg.grad_tol;
    const optimize::Result qn = optimize::bfgs(value, gradient, best_x, bopt);
    out.iterations = qn.iterations;
    grad_converged = qn.converged;
    if (qn.f < best_f) {
      best_x = qn.x;
      best_f = qn.f;
    }
  }

  // Simplex pass: the whole search when requested, otherwise an automatic
  // polish from the quasi-Newton endpoint that repairs sub-optimal
  // quasi-Newton terminations.
  optimize::NelderMeadOptions nm_opt;
  nm_opt.max_evals = cfg.simplex_polish_evals;
  nm_opt.initial_step = 0.1;
  const optimize::Result nm = optimize::nelder_mead(value, best_x, nm_opt);
  if (nm.f < best_f) {
    best_x = nm.x;
    best_f = nm.f;
    out.simplex_used = true;
    out.iterations += nm.iterations;
  }

  out.theta_opt = NeighbourhoodTheta(nbhd, best_x);
  out.u_final = best_f;

  Grid spec;
  out.min_eigenvalue = ctx.precision_spectrum(best_x, spec);
  if (out.min_eigenvalue <= cfg.feasibility_floor) {
    throw InfeasibleTheta("fit: optimiser terminated at an infeasible point");
  }
  if (!grad_converged) {
    const std::vector<double> g = ctx.gradient(best_x);
    double gn = 0.0;
    for (double v : g) {
      gn = std::max(gn, std::fabs(v));
    }
    grad_converged = gn <= cfg.grad_tol * (1.0 + std::fabs(best_f));
  }
  out.converged = grad_converged || nm.converged;
  return out;
}

ApproximationMse approximation_mse(const CirculantBase& target, const NeighbourhoodTheta& theta,
                                   int n_draws, std::uint64_t seed, Exec exec) {
  if (n_draws < 1) {
    throw Error("approximation_mse: need at least one draw");
  }
  const GridSpec& grid = target.grid();
  const int n = grid.side();
  const int m = grid.window_cells;

  const Spectrum target_spec = target.spectrum(exec);
  if (!(target_spec.min_value() > 0.0)) {
    throw NotPositiveDefinite("approximation_mse: target spectrum not positive",
                              target_spec.min_value());
  }
  const CirculantBase prec = precision_base(theta, grid);
  const Spectrum prec_spec = prec.spectrum(exec);
  if (!(prec_spec.min_value() > 0.0)) {
    throw InfeasibleTheta("approximation_mse: precision spectrum not positive");
  }

  // sqrt(Sigma) - sqrt(Sigma~) share eigenvectors, so the field difference
  // is a single spectral product per draw.
  Grid diff_eig(n);
  for (std::size_t x = 0; x < diff_eig.size(); ++x) {
    diff_eig[x] = std::sqrt(target_spec.values[x]) - 1.0 / std::sqrt(prec_spec.values[x]);
  }

  const fft::Plan plan(n);
  std::vector<double> sq_sums(n_draws, 0.0);
  std::vector<double> sums(n_draws, 0.0);

  // Each draw owns a seeded stream, so results do not depend on the
  // parallel schedule.
  const bool par = exec == Exec::Parallel;
#pragma omp parallel if (par)
  {
    std::vector<fft::cplx> buf(static_cast<std::size_t>(n) * n);
#pragma omp for schedule(static)
    for (int d = 0; d < n_draws; ++d) {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(d)));
      for (auto& z : buf) {
        z = fft::cplx(rng.normal(), 0.0);
      }
      fft::dft2d(buf.data(), plan, Exec::Serial);
      for (std::size_t x = 0; x < buf.size(); ++x) {
        buf[x] *= diff_eig[x];
      }
      fft::idft2d(buf.data(), plan, Exec::Serial);
      double sq = 0.0;
      double s = 0.0;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          const double v = buf[static_cast<std::size_t>(i) * n + j].real();
          sq += v * v;
          s += v;
        }
      }
      sq_sums[d] = sq;
      sums[d] = s;
    }
  }

  const double cells = static_cast<double>(n_draws) * m * m;
  double total_sq = 0.0;
  double total = 0.0;
  for (int d = 0; d < n_draws; ++d) {
    total_sq += sq_sums[d];
    total += sums[d];
  }
  return ApproximationMse{total_sq / cells, total / cells};
}

}  // namespace lgcp
