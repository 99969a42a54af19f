#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "momdist/kdtree.hpp"
#include "momdist/point_cloud.hpp"

namespace momdist {

/// d_X(y) = min_x |x - y| over the whole cloud.
double dist_fn(const PointCloud& cloud, std::span<const double> y);

/// Median over blocks of the per-block distance, using the lower middle order
/// statistic for an even block count. With one block this is dist_fn.
double momdist(const PointCloud& cloud, const BlockPartition& part, std::span<const double> y);

/// Distance to measure over the k nearest neighbours: root mean square of
/// their distances, or the k-th neighbour distance itself when `kth_only`.
double dtm(const PointCloud& cloud, std::size_t k, std::span<const double> y, bool kth_only = false);

/// Lower median of a mutable buffer (element (size-1)/2 after sorting).
double lower_median(std::span<double> values);

/// Prebuilt evaluator of the MoM distance: one k-d tree per block.
class MomDistEvaluator {
 public:
  MomDistEvaluator(const PointCloud& cloud, const BlockPartition& part);
  double operator()(std::span<const double> y) const;
  std::size_t num_blocks() const { return trees_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  std::vector<KdTree> trees_;
};

class DtmEvaluator {
 public:
  DtmEvaluator(const PointCloud& cloud, std::size_t k, bool kth_only = false);
  double operator()(std::span<const double> y) const;

 private:
  KdTree tree_;
  std::size_t k_;
  bool kth_only_;
};

namespace weight {
struct PlainDistance {};
struct MomDist {
  std::size_t num_blocks = 1;
  std::uint64_t seed = 0;
  bool shuffle = true;
};
struct Dtm {
  std::size_t k = 1;
  bool kth_only = false;
};
struct Zero {};
}  // namespace weight

using WeightKind = std::variant<weight::PlainDistance, weight::MomDist, weight::Dtm, weight::Zero>;

std::string describe(const WeightKind& kind);

/// A weight function f built from a cloud. Cheap to copy; evaluation is
/// thread-safe.
class WeightFunction {
 public:
  WeightFunction(const PointCloud& cloud, const WeightKind& kind);
  /// MoM distance over an explicit partition.
  WeightFunction(const PointCloud& cloud, const BlockPartition& part);

  double operator()(std::span<const double> y) const;
  /// f at every point of `targets`, in target order.
  std::vector<double> evaluate(const PointCloud& targets) const;

  const WeightKind& kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

 private:
  WeightKind kind_;
  std::size_t dim_;
  std::shared_ptr<const KdTree> plain_;
  std::shared_ptr<const MomDistEvaluator> mom_;
  std::shared_ptr<const DtmEvaluator> dtm_;
};

/// w_i = f(target_i) for the selected weight function.
std::vector<double> eval_weights(const PointCloud& cloud, const WeightKind& kind,
                                 const PointCloud& targets);

}  // namespace momdist
