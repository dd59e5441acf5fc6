#pragma once

#include <memory>
#include <vector>

#include "lgcp/fft.hpp"
#include "lgcp/grid.hpp"

namespace lgcp {

using fft::Exec;

// Eigenvalue grid of a symmetric block-circulant matrix: the unnormalised
// 2-D DFT of its base matrix, with the (checked) imaginary part discarded.
struct Spectrum {
  GridSpec grid;
  Grid values;

  double min_value() const;
  bool positive() const { return min_value() > 0.0; }
};

// Base matrix of a symmetric block-circulant matrix over the extended
// lattice. The constructor enforces toroidal symmetry:
// base(i, j) == base((N-i) mod N, (N-j) mod N).
class CirculantBase {
 public:
  CirculantBase(GridSpec grid, Grid base);

  const GridSpec& grid() const { return grid_; }
  const Grid& base() const { return base_; }

  // Unnormalised 2-D DFT of the base. Throws InvalidBase when the imaginary
  // residue exceeds 1e-8 relative to the largest real eigenvalue.
  Spectrum spectrum(Exec exec = Exec::Parallel) const;

 private:
  GridSpec grid_;
  Grid base_;
};

// Reusable complex scratch for spectral products; one per thread of control.
class Workspace {
 public:
  std::vector<fft::cplx>& buffer(std::size_t n) {
    if (buf_.size() != n) {
      buf_.assign(n, fft::cplx(0.0, 0.0));
    }
    return buf_;
  }

 private:
  std::vector<fft::cplx> buf_;
};

// Spectral algebra of one block-circulant matrix: precomputes the spectrum
// and the FFT plan, then applies A, A^{1/2}, A^{-1} and A^{-1/2} as
// IDFT(f(E) .* DFT(v)). Immutable after construction and safe to share
// across threads; callers pass their own Workspace.
class CirculantOperator {
 public:
  explicit CirculantOperator(const CirculantBase& base, Exec exec = Exec::Parallel);

  const GridSpec& grid() const { return grid_; }
  const Spectrum& spectrum() const { return spectrum_; }
  double min_eigenvalue() const { return min_eig_; }
  const fft::Plan& plan() const { return *plan_; }

  // out = A v. Any spectrum is admissible.
  void matvec(const Grid& v, Grid& out, Workspace& ws) const;
  // out = A^{1/2} v; requires a strictly positive spectrum.
  void sqrt_matvec(const Grid& v, Grid& out, Workspace& ws) const;
  // out = A^{-1} v; requires a strictly positive spectrum.
  void inv_matvec(const Grid& v, Grid& out, Workspace& ws) const;
  // out = A^{-1/2} v; requires a strictly positive spectrum.
  void inv_sqrt_matvec(const Grid& v, Grid& out, Workspace& ws) const;

  // Allocating conveniences.
  Grid matvec(const Grid& v) const;
  Grid sqrt_matvec(const Grid& v) const;
  Grid inv_matvec(const Grid& v) const;
  Grid inv_sqrt_matvec(const Grid& v) const;

 private:
  enum class Transform { Identity, Sqrt, Inverse, InverseSqrt };
  void apply(Transform t, const Grid& v, Grid& out, Workspace& ws) const;
  void require_spd(const char* op) const;

  GridSpec grid_;
  Spectrum spectrum_;
  double min_eig_ = 0.0;
  std::shared_ptr<const fft::Plan> plan_;
  Exec exec_;
};

// Base matrix of the identity: a unit impulse at the origin.
CirculantBase identity_base(const GridSpec& spec);

}  // namespace lgcp
