#include "shocklab/grid.hpp"

#include "shocklab/errors.hpp"

namespace shocklab {

Grid::Grid(double half_width, int n_cells)
    : half_width_(half_width), n_cells_(n_cells), dx_(2.0 * half_width / n_cells) {
  if (!(half_width > 0.0)) throw PreconditionError("grid half width must be positive");
  if (n_cells < kMinCells) throw PreconditionError("grid needs at least 64 cells");
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(n_nodes());
  for (int i = 0; i < n_nodes(); ++i) xs[i] = x(i);
  return xs;
}

}  // namespace shocklab
