#include "lgcp/fft.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lgcp::fft {

Plan::Plan(int n) : n_(n) {
  if (n < 1 || (n & (n - 1)) != 0) {
    throw Error("fft::Plan: length must be a power of two, got " + std::to_string(n));
  }
  int log2n = 0;
  while ((1 << log2n) < n) {
    ++log2n;
  }
  bitrev_.resize(n);
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int b = 0; b < log2n; ++b) {
      r = (r << 1) | ((i >> b) & 1);
    }
    bitrev_[i] = r;
  }
  twiddle_.resize(n / 2);
  for (int k = 0; k < n / 2; ++k) {
    const double ang = -2.0 * std::numbers::pi * k / n;
    twiddle_[k] = cplx(std::cos(ang), std::sin(ang));
  }
}

void Plan::transform(cplx* x, bool inverse) const {
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    const int j = bitrev_[i];
    if (j > i) {
      std::swap(x[i], x[j]);
    }
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len >> 1;
    const int step = n / len;
    for (int block = 0; block < n; block += len) {
      for (int k = 0; k < half; ++k) {
        cplx w = twiddle_[k * step];
        if (inverse) {
          w = std::conj(w);
        }
        const cplx a = x[block + k];
        const cplx b = x[block + k + half] * w;
        x[block + k] = a + b;
        x[block + k + half] = a - b;
      }
    }
  }
}

namespace {

// Rows in place, then columns through a per-thread scratch line.
void transform2d(cplx* x, const Plan& plan, bool inverse, Exec exec) {
  const int n = plan.size();
  const bool par = exec == Exec::Parallel;

#pragma omp parallel for schedule(static) if (par)
  for (int i = 0; i < n; ++i) {
    cplx* row = x + static_cast<std::size_t>(i) * n;
    if (inverse) {
      plan.inverse(row);
    } else {
      plan.forward(row);
    }
  }

#pragma omp parallel if (par)
  {
    std::vector<cplx> col(n);
#pragma omp for schedule(static)
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        col[i] = x[static_cast<std::size_t>(i) * n + j];
      }
      if (inverse) {
        plan.inverse(col.data());
      } else {
        plan.forward(col.data());
      }
      for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i) * n + j] = col[i];
      }
    }
  }
}

}  // namespace

void dft2d(cplx* x, const Plan& plan, Exec exec) { transform2d(x, plan, false, exec); }

void idft2d(cplx* x, const Plan& plan, Exec exec) {
  transform2d(x, plan, true, exec);
  const int n = plan.size();
  const double scale = 1.0 / (static_cast<double>(n) * n);
  const std::size_t total = static_cast<std::size_t>(n) * n;
  for (std::size_t k = 0; k < total; ++k) {
    x[k] *= scale;
  }
}

namespace reference {

std::vector<cplx> dft2d_naive(const std::vector<cplx>& in, int n) {
  // Separable evaluation: 1-D direct DFT over rows, then over columns.
  auto dft1d = [n](const cplx* src, int stride, cplx* dst) {
    for (int p = 0; p < n; ++p) {
      cplx acc(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        const double ang = -2.0 * std::numbers::pi * p * j / n;
        acc += src[static_cast<std::size_t>(j) * stride] * cplx(std::cos(ang), std::sin(ang));
      }
      dst[p] = acc;
    }
  };

  std::vector<cplx> rows(in.size());
  std::vector<cplx> line(n);
  for (int i = 0; i < n; ++i) {
    dft1d(in.data() + static_cast<std::size_t>(i) * n, 1, line.data());
    for (int j = 0; j < n; ++j) {
      rows[static_cast<std::size_t>(i) * n + j] = line[j];
    }
  }
  std::vector<cplx> out(in.size());
  for (int j = 0; j < n; ++j) {
    dft1d(rows.data() + j, n, line.data());
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i) * n + j] = line[i];
    }
  }
  return out;
}

}  // namespace reference

}  // namespace lgcp::fft
