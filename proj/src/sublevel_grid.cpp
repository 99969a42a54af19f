#include "momdist/sublevel_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace momdist {

BoundingBox padded_bounds(const PointCloud& cloud, double pad) {
  cloud.require_nonempty();
  if (cloud.dim() != 2) throw Error("grid sublevel is 2-D only");
  BoundingBox b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    b.x0 = std::min(b.x0, cloud[i][0]);
    b.y0 = std::min(b.y0, cloud[i][1]);
    b.x1 = std::max(b.x1, cloud[i][0]);
    b.y1 = std::max(b.y1, cloud[i][1]);
  }
  b.x0 -= pad;
  b.y0 -= pad;
  b.x1 += pad;
  b.y1 += pad;
  return b;
}

ScalarGrid sample_grid(const WeightFunction& f, const BoundingBox& box, double resolution) {
  if (f.dim() != 2) throw Error("grid sublevel is 2-D only");
  if (!(resolution > 0.0)) throw Error("grid resolution must be positive");
  if (!(box.x1 > box.x0) || !(box.y1 > box.y0)) throw Error("degenerate bounding box");
  ScalarGrid g;
  g.origin = {box.x0, box.y0};
  g.resolution = resolution;
  // Small slack so that boxes that are whole multiples of the spacing keep their far edge.
  g.cols = static_cast<std::size_t>(std::floor((box.x1 - box.x0) / resolution + 1e-9)) + 1;
  g.rows = static_cast<std::size_t>(std::floor((box.y1 - box.y0) / resolution + 1e-9)) + 1;
  PointCloud nodes(2);
  for (std::size_t r = 0; r < g.rows; ++r)
    for (std::size_t c = 0; c < g.cols; ++c) {
      const double p[2] = {box.x0 + static_cast<double>(c) * resolution, box.y0 + static_cast<double>(r) * resolution};
      nodes.push_back(p);
    }
  g.values = f.evaluate(nodes);
  return g;
}

ScalarGrid sample_grid(const PointCloud& cloud, const WeightKind& kind, const BoundingBox& box, double resolution) {
  if (cloud.dim() != 2) throw Error("grid sublevel is 2-D only");
  return sample_grid(WeightFunction(cloud, kind), box, resolution);
}

FilteredComplex lower_star_complex(const ScalarGrid& g) {
  if (g.rows == 0 || g.cols == 0 || g.values.size() != g.rows * g.cols) throw Error("invalid grid");
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<Index>(r * g.cols + c); };
  FilteredComplex out;
  out.max_dim = 2;
  auto& s = out.simplices;
  auto add = [&](std::vector<Index> v) {
    std::sort(v.begin(), v.end());
    double value = -std::numeric_limits<double>::infinity();
    for (Index x : v) value = std::max(value, g.values[x]);
    s.push_back({std::move(v), value});
  };
  for (std::size_t r = 0; r < g.rows; ++r)
    for (std::size_t c = 0; c < g.cols; ++c) {
      add({id(r, c)});
      if (c + 1 < g.cols) add({id(r, c), id(r, c + 1)});
      if (r + 1 < g.rows) add({id(r, c), id(r + 1, c)});
      if (r + 1 < g.rows && c + 1 < g.cols) {
        add({id(r, c), id(r + 1, c + 1)});
        add({id(r, c), id(r, c + 1), id(r + 1, c + 1)});
        add({id(r, c), id(r + 1, c), id(r + 1, c + 1)});
      }
    }
  sort_filtration(s);
  return out;
}

PersistenceDiagram lower_star_diagram(const ScalarGrid& grid, bool keep_zero) {
  auto d = reduce(lower_star_complex(grid), keep_zero);
  std::erase_if(d.pairs, [](const PersistencePair& p) { return p.dim > 1; });
  d.source = "lower-star";
  return d;
}

void write_grid_csv(std::ostream& out, const ScalarGrid& g) {
  const auto old = out.precision(17);
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t c = 0; c < g.cols; ++c) {
      if (c) out << ',';
      out << g.at(r, c);
    }
    out << '\n';
  }
  out.precision(old);
}

}  // namespace momdist
