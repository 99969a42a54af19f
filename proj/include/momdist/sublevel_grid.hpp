#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "momdist/distance.hpp"
#include "momdist/persistence.hpp"

namespace momdist {

/// Axis-aligned box [x0, x1] x [y0, y1].
struct BoundingBox {
  double x0, y0, x1, y1;
};

/// Samples of a function on a regular 2-D grid. Node (r, c) sits at
/// (origin.x + c * resolution, origin.y + r * resolution).
struct ScalarGrid {
  std::array<double, 2> origin{0.0, 0.0};
  double resolution = 1.0;
  std::size_t rows = 0, cols = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

/// Data bounding box grown on every side by `pad`.
BoundingBox padded_bounds(const PointCloud& cloud, double pad);

/// Grid covering `box` with the given spacing; values are f at the nodes.
ScalarGrid sample_grid(const WeightFunction& f, const BoundingBox& box, double resolution);
ScalarGrid sample_grid(const PointCloud& cloud, const WeightKind& kind, const BoundingBox& box,
                       double resolution);

/// Lower-star filtration of the Freudenthal triangulation of the grid (each
/// cell cut along its lower-left to upper-right diagonal).
FilteredComplex lower_star_complex(const ScalarGrid& grid);

/// H0 and H1 of the lower-star filtration.
PersistenceDiagram lower_star_diagram(const ScalarGrid& grid, bool keep_zero = false);

/// Grid values as a CSV matrix, one grid row per line.
void write_grid_csv(std::ostream& out, const ScalarGrid& grid);

}  // namespace momdist
