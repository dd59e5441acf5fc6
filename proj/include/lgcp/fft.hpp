#pragma once

#include <complex>
#include <vector>

#include "lgcp/errors.hpp"

namespace lgcp::fft {

using cplx = std::complex<double>;

// Execution policy for the data-parallel kernels. Parallel runs the batched
// row/column transforms under OpenMP; Serial runs the same arithmetic on one
// thread and is the reference the tests and the benchmark compare against.
enum class Exec { Serial, Parallel };

// Precomputed bit-reversal permutation and twiddle factors for a radix-2
// transform of a fixed power-of-two length.
class Plan {
 public:
  explicit Plan(int n);

  int size() const { return n_; }

  // Unnormalised in-place transforms of length size().
  void forward(cplx* x) const { transform(x, false); }
  // Conjugate transform; no 1/n factor is applied.
  void inverse(cplx* x) const { transform(x, true); }

 private:
  void transform(cplx* x, bool inverse) const;

  int n_ = 0;
  std::vector<int> bitrev_;
  std::vector<cplx> twiddle_;  // exp(-2*pi*i*k/n) for k < n/2
};

// In-place 2-D transforms of an n x n row-major complex grid, n = plan.size().
// dft2d is the unnormalised forward transform; idft2d divides by n^2 so that
// idft2d(dft2d(x)) == x.
void dft2d(cplx* x, const Plan& plan, Exec exec = Exec::Parallel);
void idft2d(cplx* x, const Plan& plan, Exec exec = Exec::Parallel);

namespace reference {

// Direct O(n^3) evaluation of the unnormalised 2-D DFT, kept as an
// independent check on the fast transforms.
std::vector<cplx> dft2d_naive(const std::vector<cplx>& in, int n);

}  // namespace reference

}  // namespace lgcp::fft
