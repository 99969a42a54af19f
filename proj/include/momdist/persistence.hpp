#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "momdist/weighted_rips.hpp"

namespace momdist {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;

  bool essential() const { return death == kInfinity; }
  double persistence() const { return death - birth; }
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;
  std::string source;

  /// Pairs of one homological dimension.
  std::vector<PersistencePair> in_dim(int dim) const;
  /// Canonical order (dim, birth, death) for comparisons and output.
  void sort();
};

/// Standard column reduction of the boundary matrix over Z/2. Zero-length
/// pairs are dropped unless `keep_zero`.
PersistenceDiagram reduce(const FilteredComplex& complex, bool keep_zero = false);

/// Largest finite death - birth in the given dimension, 0 when there is none.
double max_persistence(const PersistenceDiagram& diagram, int dim);

/// Persistence of the flag complex given by a symmetric matrix of edge
/// times (diagonal = vertex times, +inf = absent). H0 by union-find; when
/// max_dim >= 2, H1 by cohomology reduction with clearing over implicitly
/// enumerated triangles. Produces the same diagram as reduce() on the
/// explicit complex.
PersistenceDiagram flag_persistence(std::span<const double> edge_times, std::size_t n,
                                    std::size_t max_dim = 2, bool keep_zero = false);

/// Weighted Rips diagram of (cloud, weights). Without t_max the filtration
/// is cut where the complex becomes a cone, which leaves the diagram unchanged.
PersistenceDiagram weighted_rips_diagram(const PointCloud& cloud, std::span<const double> weights,
                                         PowerParam p, std::size_t max_dim = 2,
                                         std::optional<double> t_max = std::nullopt,
                                         bool keep_zero = false);

}  // namespace momdist
