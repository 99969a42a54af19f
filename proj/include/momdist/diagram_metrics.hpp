#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "momdist/distance.hpp"
#include "momdist/persistence.hpp"

namespace momdist {

/// One matched pair: indices into the input diagrams' `pairs`, or kDiagonal.
inline constexpr long kDiagonal = -1;
using MatchedPair = std::pair<long, long>;

struct BottleneckResult {
  double distance = 0.0;
  std::optional<std::vector<MatchedPair>> matching;
};

/// Dimension selector meaning "every dimension": the distance is the maximum
/// over the per-dimension distances.
inline constexpr int kAllDims = -1;

/// Bottleneck distance between the `dim` parts of two diagrams. Essential
/// classes are matched among themselves by sorted births; differing counts
/// give +inf. Finite classes: binary search over the candidate costs with a
/// bipartite feasibility test.
BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim,
                            double tol = 1e-9, bool want_matching = false);

/// Shorthand for the distance only.
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);

/// Hausdorff distance between two point clouds (brute force).
double hausdorff(const PointCloud& x, const PointCloud& y);

/// Birth-time influence of a point x0: f_clean(x0) - f_contaminated(x0).
double birth_influence(const WeightFunction& clean, const WeightFunction& contaminated,
                       std::span<const double> x0);

/// max over eval_points of |f_clean - f_contaminated|, a computable stand-in
/// for the sup-norm distance.
double winf_influence(const WeightFunction& clean, const WeightFunction& contaminated,
                      const PointCloud& eval_points);

}  // namespace momdist
