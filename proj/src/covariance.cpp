#include "lgcp/covariance.hpp"

#include <cmath>
#include <string>

namespace lgcp {

CovarianceModel CovarianceModel::exponential(double sigma, double phi) {
  if (!(sigma > 0.0) || !(phi > 0.0)) {
    throw Error("CovarianceModel: sigma and phi must be positive");
  }
  return CovarianceModel{Kind::Exponential, sigma, phi, 0.5};
}

CovarianceModel CovarianceModel::matern(double nu, double sigma, double phi) {
  if (!(sigma > 0.0) || !(phi > 0.0)) {
    throw Error("CovarianceModel: sigma and phi must be positive");
  }
  if (nu != 0.5 && nu != 1.5 && nu != 2.5) {
    throw Error("CovarianceModel: Matern smoothness must be one of 1/2, 3/2, 5/2");
  }
  return CovarianceModel{Kind::Matern, sigma, phi, nu};
}

double CovarianceModel::operator()(double distance) const {
  const double s2 = sigma * sigma;
  if (kind == Kind::Exponential) {
    return s2 * std::exp(-distance / phi);
  }
  const double u = std::sqrt(2.0 * nu) * distance / phi;
  if (nu == 0.5) {
    return s2 * std::exp(-u);
  }
  if (nu == 1.5) {
    return s2 * (1.0 + u) * std::exp(-u);
  }
  return s2 * (1.0 + u + u * u / 3.0) * std::exp(-u);
}

CirculantBase cov_base(const CovarianceModel& model, const GridSpec& grid, Exec exec) {
  const int n = grid.side();
  Grid base(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      base(i, j) = model(grid.toral_distance(0, 0, i, j));
    }
  }
  CirculantBase out(grid, std::move(base));
  const Spectrum spec = out.spectrum(exec);
  const double min_eig = spec.min_value();
  if (!(min_eig > 0.0)) {
    throw NeedLargerExtension(
        "cov_base: covariance embedding is not positive definite on a " + std::to_string(n) +
            "x" + std::to_string(n) + " torus; retry with extension factor 4",
        min_eig);
  }
  return out;
}

WhiteNoiseState draw_white_noise(const GridSpec& grid, Rng& rng) {
  Grid gamma(grid.side());
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    gamma[k] = rng.normal();
  }
  return WhiteNoiseState{grid, std::move(gamma)};
}

FieldState sample_field(const CirculantOperator& cov, const WhiteNoiseState& gamma, double mean) {
  Grid y = cov.sqrt_matvec(gamma.gamma);
  for (std::size_t k = 0; k < y.size(); ++k) {
    y[k] += mean;
  }
  return FieldState{cov.grid(), std::move(y), mean};
}

WhiteNoiseState whiten(const CirculantOperator& cov, const FieldState& field) {
  Grid centred = field.y_ext;
  for (std::size_t k = 0; k < centred.size(); ++k) {
    centred[k] -= field.mean;
  }
  Grid gamma = cov.inv_sqrt_matvec(centred);
  return WhiteNoiseState{cov.grid(), std::move(gamma)};
}

}  // namespace lgcp
