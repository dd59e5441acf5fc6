#include "lgcp/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace lgcp {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

GridSpec GridSpec::make(int window_cells, int ext_factor, double window_width,
                        double window_height) {
  if (!is_power_of_two(window_cells) || window_cells < 2) {
    throw Error("GridSpec: window cells per side must be a power of two >= 2, got " +
                std::to_string(window_cells));
  }
  if (ext_factor != 2 && ext_factor != 4) {
    throw Error("GridSpec: extension factor must be 2 or 4, got " + std::to_string(ext_factor));
  }
  if (!(window_width > 0.0) || !(window_height > 0.0)) {
    throw Error("GridSpec: window dimensions must be positive");
  }
  GridSpec spec;
  spec.window_cells = window_cells;
  spec.ext_factor = ext_factor;
  spec.window_width = window_width;
  spec.window_height = window_height;
  return spec;
}

std::vector<std::uint8_t> GridSpec::window_mask() const {
  std::vector<std::uint8_t> mask(cell_count(), 0);
  const int n = side();
  for (int i = 0; i < window_cells; ++i) {
    for (int j = 0; j < window_cells; ++j) {
      mask[static_cast<std::size_t>(i) * n + j] = 1;
    }
  }
  return mask;
}

double GridSpec::toral_distance(int ia, int ja, int ib, int jb) const {
  const int n = side();
  auto in_range = [n](int v) { return v >= 0 && v < n; };
  if (!in_range(ia) || !in_range(ja) || !in_range(ib) || !in_range(jb)) {
    throw Error("toral_distance: cell index out of range for extended lattice");
  }
  const int di = std::abs(ia - ib);
  const int dj = std::abs(ja - jb);
  const double dy = std::min(di, n - di) * cell_height();
  const double dx = std::min(dj, n - dj) * cell_width();
  return std::sqrt(dx * dx + dy * dy);
}

Grid window_of(const GridSpec& spec, const Grid& extended) {
  if (extended.side() != spec.side()) {
    throw Error("window_of: grid does not match the extended lattice");
  }
  Grid out(spec.window_cells);
  for (int i = 0; i < spec.window_cells; ++i) {
    for (int j = 0; j < spec.window_cells; ++j) {
      out(i, j) = extended(i, j);
    }
  }
  return out;
}

Grid extend_with_zeros(const GridSpec& spec, const Grid& window) {
  if (window.side() != spec.window_cells) {
    throw Error("extend_with_zeros: grid does not match the window");
  }
  Grid out(spec.side(), 0.0);
  for (int i = 0; i < spec.window_cells; ++i) {
    for (int j = 0; j < spec.window_cells; ++j) {
      out(i, j) = window(i, j);
    }
  }
  return out;
}

}  // namespace lgcp
