#pragma once

#include <span>
#include <vector>

#include "momdist/point_cloud.hpp"

namespace momdist {

/// Exact k-d tree over a subset of a cloud. Splits at the median of the
/// coordinate with the widest spread; leaves hold at most `leaf_size` points.
/// The tree keeps its own copy of the indexed coordinates.
class KdTree {
 public:
  static constexpr std::size_t kDefaultLeafSize = 16;

  KdTree(const PointCloud& cloud, std::span<const std::size_t> subset,
         std::size_t leaf_size = kDefaultLeafSize);
  /// Indexes the whole cloud.
  explicit KdTree(const PointCloud& cloud, std::size_t leaf_size = kDefaultLeafSize);

  std::size_t size() const { return ids_.size(); }
  std::size_t dim() const { return dim_; }

  /// Distance from y to the closest indexed point.
  double nearest_distance(std::span<const double> y) const;

  /// Squared distances to the k closest indexed points, ascending.
  std::vector<double> knn_squared(std::span<const double> y, std::size_t k) const;

 private:
  struct Node {
    std::size_t begin, end;  // range into ids_/coords_
    std::size_t left = 0, right = 0;
    std::size_t axis = 0;
    double split = 0.0;
    bool leaf = true;
  };

  std::size_t build(std::size_t begin, std::size_t end);
  std::span<const double> point(std::size_t slot) const {
    return {coords_.data() + slot * dim_, dim_};
  }
  void nearest_rec(std::size_t node, std::span<const double> y, double& best) const;
  void knn_rec(std::size_t node, std::span<const double> y, std::size_t k,
               std::vector<double>& heap) const;

  std::size_t dim_;
  std::size_t leaf_size_;
  std::vector<std::size_t> ids_;
  std::vector<double> coords_;  // reordered copy, slot-major
  std::vector<Node> nodes_;
};

}  // namespace momdist
