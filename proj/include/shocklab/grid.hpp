#pragma once

#include <vector>

namespace shocklab {

/// Uniform grid on [-half_width, half_width] with n_cells + 1 nodes.
class Grid {
 public:
  static constexpr int kMinCells = 64;

  Grid(double half_width, int n_cells);

  double half_width() const { return half_width_; }
  int n_cells() const { return n_cells_; }
  int n_nodes() const { return n_cells_ + 1; }
  double dx() const { return dx_; }
  double x(int i) const { return -half_width_ + i * dx_; }
  std::vector<double> nodes() const;

 private:
  double half_width_;
  int n_cells_;
  double dx_;
};

/// Nodal samples of u at time t.
struct Field {
  std::vector<double> u;
  double t = 0.0;
};

/// Trapezoid rule on the nodes of a uniform grid.
template <class Range>
double trapezoid(const Range& values, double dx) {
  const auto n = std::size(values);
  if (n < 2) return 0.0;
  double acc = 0.5 * (values[0] + values[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) acc += values[i];
  return acc * dx;
}

}  // namespace shocklab
