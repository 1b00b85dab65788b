#ifndef CCFRAG_GRID_HPP_
#define CCFRAG_GRID_HPP_

#include <cstddef>
#include <functional>
#include <vector>

namespace ccfrag {

/// Geometric mass grid. Cell i spans [edges[i], edges[i+1]); the pivot is the
/// geometric mean of the edges, which keeps the representation unbiased for
/// power-law densities. Immutable after construction.
struct MassGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n_cells = 0;
  double ratio = 1.0;  // edges[i+1]/edges[i], constant
  std::vector<double> edges;   // n_cells + 1
  std::vector<double> pivots;  // n_cells
  std::vector<double> widths;  // n_cells

  /// Index of the cell containing x. Requires x_min <= x <= x_max; the top
  /// edge is mapped into the last cell.
  std::size_t locate(double x) const;

  bool same_as(const MassGrid& other) const;
};

MassGrid build_geometric_grid(double x_min, double x_max, std::size_t n_cells);

/// Cell-averaged projection of g0 with fixed 16-point Gauss-Legendre
/// quadrature per cell. Throws InputError if g0 returns a negative or
/// non-finite value at a quadrature node.
std::vector<double> project_initial_condition(
    const MassGrid& grid, const std::function<double(double)>& g0);

/// Composite 16-point Gauss-Legendre integral of f over [a, b] split into
/// `panels` equal panels. Shared by the projection and the custom-kernel
/// cell integrals.
double gauss16(const std::function<double(double)>& f, double a, double b,
               int panels = 1);

}  // namespace ccfrag

#endif
