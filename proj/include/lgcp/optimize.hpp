#pragma once

#include <functional>
#include <vector>

namespace lgcp::optimize {

using Objective = std::function<double(const std::vector<double>&)>;
using Gradient = std::function<std::vector<double>(const std::vector<double>&)>;

struct Result {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct BfgsOptions {
  int max_iter = 500;
  // Converged when the gradient infinity norm is <= grad_tol * (1 + |f|).
  double grad_tol = 1e-6;
};

// Quasi-Newton minimiser with an inverse-Hessian BFGS update and Armijo
// backtracking. The gradient is only evaluated at accepted points, so the
// objective may encode infeasibility as a large finite penalty.
Result bfgs(const Objective& f, const Gradient& grad, std::vector<double> x0,
            const BfgsOptions& opt = {});

struct NelderMeadOptions {
  int max_evals = 4000;
  double initial_step = 0.1;
  double f_tol = 1e-12;
};

// Nelder-Mead simplex minimiser; derivative-free.
Result nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt = {});

}  // namespace lgcp::optimize
