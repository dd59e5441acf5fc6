#include "lgcp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lgcp::optimize {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    m = std::max(m, std::fabs(x));
  }
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

Result bfgs(const Objective& f, const Gradient& grad, std::vector<double> x0,
            const BfgsOptions& opt) {
  const std::size_t n = x0.size();
  std::vector<double> x = std::move(x0);
  double fx = f(x);
  std::vector<double> gx = grad(x);

  // Inverse Hessian approximation, dense row-major, started at identity.
  std::vector<double> h(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    h[i * n + i] = 1.0;
  }

  std::vector<double> p(n), x_new(n), g_new(n), s(n), y(n), hy(n);
  Result res;

  for (int iter = 0; iter < opt.max_iter; ++iter) {
    res.iterations = iter;
    if (inf_norm(gx) <= opt.grad_tol * (1.0 + std::fabs(fx))) {
      res.converged = true;
      break;
    }

    // p = -H g
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        acc += h[i * n + j] * gx[j];
      }
      p[i] = -acc;
    }
    double slope = dot(gx, p);
    if (!(slope < 0.0)) {
      // Not a descent direction; reset to steepest descent.
      std::fill(h.begin(), h.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        h[i * n + i] = 1.0;
        p[i] = -gx[i];
      }
      slope = dot(gx, p);
      if (!(slope < 0.0)) {
        break;
      }
    }

    // Armijo backtracking.
    const double c1 = 1e-4;
    double alpha = 1.0;
    bool accepted = false;
    double f_new = fx;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < n; ++i) {
        x_new[i] = x[i] + alpha * p[i];
      }
      f_new = f(x_new);
      if (std::isfinite(f_new) && f_new <= fx + c1 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      break;
    }

    g_new = grad(x_new);
    double sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - x[i];
      y[i] = g_new[i] - gx[i];
      sy += s[i] * y[i];
    }
    x = x_new;
    fx = f_new;
    gx = g_new;

    if (sy > 1e-14) {
      // H <- (I - s y^T / sy) H (I - y s^T / sy) + s s^T / sy
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          acc += h[i * n + j] * y[j];
        }
        hy[i] = acc;
      }
      const double yhy = dot(y, hy);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          h[i * n + j] += rho * rho * yhy * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]) +
                          rho * s[i] * s[j];
        }
      }
    }
  }

  res.x = std::move(x);
  res.f = fx;
  return res;
}

Result nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  const std::size_t m = n + 1;

  std::vector<std::vector<double>> simplex(m, x0);
  std::vector<double> fv(m);
  for (std::size_t i = 0; i < n; ++i) {
    double step = opt.initial_step * std::max(std::fabs(x0[i]), 1.0);
    if (step == 0.0) {
      step = opt.initial_step;
    }
    simplex[i + 1][i] += step;
  }
  int evals = 0;
  for (std::size_t i = 0; i < m; ++i) {
    fv[i] = f(simplex[i]);
    ++evals;
  }

  std::vector<std::size_t> order(m);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  Result res;

  while (evals < opt.max_evals) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[m - 1];
    const std::size_t second_worst = order[m - 2];

    if (std::fabs(fv[worst] - fv[best]) <= opt.f_tol * (1.0 + std::fabs(fv[best]))) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      if (k == worst) {
        continue;
      }
      for (std::size_t i = 0; i < n; ++i) {
        centroid[i] += simplex[k][i];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      centroid[i] /= static_cast<double>(n);
    }

    auto blend = [&](std::vector<double>& dst, double t) {
      for (std::size_t i = 0; i < n; ++i) {
        dst[i] = centroid[i] + t * (simplex[worst][i] - centroid[i]);
      }
    };

    blend(xr, -1.0);  // reflection
    const double fr = f(xr);
    ++evals;
    if (fr < fv[best]) {
      blend(xe, -2.0);  // expansion
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second_worst]) {
      simplex[worst] = xr;
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      blend(xc, outside ? -0.5 : 0.5);
      const double fc = f(xc);
      ++evals;
      if (fc < std::min(fr, fv[worst])) {
        simplex[worst] = xc;
        fv[worst] = fc;
      } else {
        // Shrink towards the best vertex.
        for (std::size_t k = 0; k < m; ++k) {
          if (k == best) {
            continue;
          }
          for (std::size_t i = 0; i < n; ++i) {
            simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
          }
          fv[k] = f(simplex[k]);
          ++evals;
        }
      }
    }
    ++res.iterations;
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < m; ++k) {
    if (fv[k] < fv[best]) {
      best = k;
    }
  }
  res.x = simplex[best];
  res.f = fv[best];
  return res;
}

}  // namespace lgcp::optimize
