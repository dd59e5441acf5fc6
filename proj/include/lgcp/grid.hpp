#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lgcp/errors.hpp"

namespace lgcp {

// Square row-major array of doubles.
class Grid {
 public:
  Grid() = default;
  explicit Grid(int side, double fill = 0.0)
      : side_(side), data_(static_cast<std::size_t>(side) * side, fill) {}

  int side() const { return side_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * side_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * side_ + j]; }

  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  const std::vector<double>& values() const { return data_; }

  bool same_shape(const Grid& other) const { return side_ == other.side_; }

  void fill(double v) { data_.assign(data_.size(), v); }

 private:
  int side_ = 0;
  std::vector<double> data_;
};

// Lattice geometry: an M x M observation window embedded in the corner of an
// (ext_factor * M)^2 extended lattice wrapped on a torus.
struct GridSpec {
  int window_cells = 0;  // M, cells per side of the observation window
  int ext_factor = 2;    // 2 or 4
  double window_width = 1.0;
  double window_height = 1.0;

  // Validates and constructs. M must be a power of two >= 2 and ext_factor
  // one of {2, 4}.
  static GridSpec make(int window_cells, int ext_factor, double window_width = 1.0,
                       double window_height = 1.0);

  int side() const { return window_cells * ext_factor; }  // N_side
  std::size_t cell_count() const {
    return static_cast<std::size_t>(side()) * static_cast<std::size_t>(side());
  }
  double cell_width() const { return window_width / window_cells; }
  double cell_height() const { return window_height / window_cells; }
  double cell_area() const { return cell_width() * cell_height(); }  // C_A

  int window_cell_count() const { return window_cells * window_cells; }  // M_in
  bool in_window(int i, int j) const {
    return i >= 0 && i < window_cells && j >= 0 && j < window_cells;
  }
  // Boolean mask over the extended lattice, true inside the window.
  std::vector<std::uint8_t> window_mask() const;

  // Centroid of a window cell (i, j) within the window rectangle.
  double centroid_x(int j) const { return (j + 0.5) * cell_width(); }
  double centroid_y(int i) const { return (i + 0.5) * cell_height(); }

  // Shortest distance between two cells of the extended lattice allowing
  // wraparound on the torus. Throws if an index is out of range.
  double toral_distance(int ia, int ja, int ib, int jb) const;

  bool operator==(const GridSpec&) const = default;
};

// Extracts the M x M window corner of an extended-lattice grid.
Grid window_of(const GridSpec& spec, const Grid& extended);

// Zero-extends an M x M window grid onto the full extended lattice.
Grid extend_with_zeros(const GridSpec& spec, const Grid& window);

}  // namespace lgcp
