#include "lgcp/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lgcp {

double Spectrum::min_value() const {
  double m = values[0];
  for (std::size_t k = 1; k < values.size(); ++k) {
    m = std::min(m, values[k]);
  }
  return m;
}

CirculantBase::CirculantBase(GridSpec grid, Grid base) : grid_(grid), base_(std::move(base)) {
  const int n = grid_.side();
  if (base_.side() != n) {
    throw InvalidBase("CirculantBase: base matrix does not match the extended lattice");
  }
  double max_abs = 0.0;
  for (std::size_t k = 0; k < base_.size(); ++k) {
    max_abs = std::max(max_abs, std::fabs(base_[k]));
  }
  const double tol = 1e-12 * std::max(max_abs, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double mirrored = base_((n - i) % n, (n - j) % n);
      if (std::fabs(base_(i, j) - mirrored) > tol) {
        throw InvalidBase("CirculantBase: toroidal symmetry violated at (" + std::to_string(i) +
                          ", " + std::to_string(j) + ")");
      }
    }
  }
}

Spectrum CirculantBase::spectrum(Exec exec) const {
  const int n = grid_.side();
  const std::size_t total = base_.size();
  std::vector<fft::cplx> buf(total);
  for (std::size_t k = 0; k < total; ++k) {
    buf[k] = fft::cplx(base_[k], 0.0);
  }
  fft::Plan plan(n);
  fft::dft2d(buf.data(), plan, exec);

  double max_real = 0.0;
  double max_imag = 0.0;
  for (const auto& z : buf) {
    max_real = std::max(max_real, std::fabs(z.real()));
    max_imag = std::max(max_imag, std::fabs(z.imag()));
  }
  if (max_imag > 1e-8 * std::max(max_real, 1e-300)) {
    throw InvalidBase("spectrum: imaginary residue " + std::to_string(max_imag) +
                      " exceeds tolerance relative to " + std::to_string(max_real));
  }

  Spectrum spec{grid_, Grid(n)};
  for (std::size_t k = 0; k < total; ++k) {
    spec.values[k] = buf[k].real();
  }
  return spec;
}

CirculantOperator::CirculantOperator(const CirculantBase& base, Exec exec)
    : grid_(base.grid()),
      spectrum_(base.spectrum(exec)),
      plan_(std::make_shared<fft::Plan>(base.grid().side())),
      exec_(exec) {
  min_eig_ = spectrum_.min_value();
}

void CirculantOperator::require_spd(const char* op) const {
  if (!(min_eig_ > 0.0)) {
    throw NotPositiveDefinite(std::string(op) + ": spectrum is not strictly positive", min_eig_);
  }
}

void CirculantOperator::apply(Transform t, const Grid& v, Grid& out, Workspace& ws) const {
  const int n = grid_.side();
  if (v.side() != n) {
    throw Error("CirculantOperator: input grid has side " + std::to_string(v.side()) +
                ", expected " + std::to_string(n));
  }
  const std::size_t total = v.size();
  auto& buf = ws.buffer(total);
  for (std::size_t k = 0; k < total; ++k) {
    buf[k] = fft::cplx(v[k], 0.0);
  }
  fft::dft2d(buf.data(), *plan_, exec_);
  const double* eig = spectrum_.values.data();
  switch (t) {
    case Transform::Identity:
      for (std::size_t k = 0; k < total; ++k) buf[k] *= eig[k];
      break;
    case Transform::Sqrt:
      for (std::size_t k = 0; k < total; ++k) buf[k] *= std::sqrt(eig[k]);
      break;
    case Transform::Inverse:
      for (std::size_t k = 0; k < total; ++k) buf[k] /= eig[k];
      break;
    case Transform::InverseSqrt:
      for (std::size_t k = 0; k < total; ++k) buf[k] /= std::sqrt(eig[k]);
      break;
  }
  fft::idft2d(buf.data(), *plan_, exec_);
  if (out.side() != n) {
    out = Grid(n);
  }
  for (std::size_t k = 0; k < total; ++k) {
    out[k] = buf[k].real();
  }
}

void CirculantOperator::matvec(const Grid& v, Grid& out, Workspace& ws) const {
  apply(Transform::Identity, v, out, ws);
}

void CirculantOperator::sqrt_matvec(const Grid& v, Grid& out, Workspace& ws) const {
  require_spd("sqrt_matvec");
  apply(Transform::Sqrt, v, out, ws);
}

void CirculantOperator::inv_matvec(const Grid& v, Grid& out, Workspace& ws) const {
  require_spd("inv_matvec");
  apply(Transform::Inverse, v, out, ws);
}

void CirculantOperator::inv_sqrt_matvec(const Grid& v, Grid& out, Workspace& ws) const {
  require_spd("inv_sqrt_matvec");
  apply(Transform::InverseSqrt, v, out, ws);
}

Grid CirculantOperator::matvec(const Grid& v) const {
  Workspace ws;
  Grid out;
  matvec(v, out, ws);
  return out;
}

Grid CirculantOperator::sqrt_matvec(const Grid& v) const {
  Workspace ws;
  Grid out;
  sqrt_matvec(v, out, ws);
  return out;
}

Grid CirculantOperator::inv_matvec(const Grid& v) const {
  Workspace ws;
  Grid out;
  inv_matvec(v, out, ws);
  return out;
}

Grid CirculantOperator::inv_sqrt_matvec(const Grid& v) const {
  Workspace ws;
  Grid out;
  inv_sqrt_matvec(v, out, ws);
  return out;
}

CirculantBase identity_base(const GridSpec& spec) {
  Grid base(spec.side(), 0.0);
  base(0, 0) = 1.0;
  return CirculantBase(spec, std::move(base));
}

}  // namespace lgcp
