#include "momdist/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace momdist {

KdTree::KdTree(const PointCloud& cloud, std::span<const std::size_t> subset, std::size_t leaf_size)
    : dim_(cloud.dim()), leaf_size_(std::max<std::size_t>(1, leaf_size)) {
  if (subset.empty()) throw Error("empty block");
  ids_.assign(subset.begin(), subset.end());
  for (std::size_t i : ids_) {
    if (i >= cloud.size()) throw Error("point index out of range");
  }
  // Build over a permutation of slots, then materialise coordinates in leaf order.
  std::vector<double> src(ids_.size() * dim_);
  for (std::size_t s = 0; s < ids_.size(); ++s) {
    const auto p = cloud[ids_[s]];
    std::copy(p.begin(), p.end(), src.begin() + s * dim_);
  }
  coords_ = std::move(src);
  nodes_.reserve(2 * ids_.size() / leaf_size_ + 1);
  build(0, ids_.size());
}

KdTree::KdTree(const PointCloud& cloud, std::size_t leaf_size)
    : KdTree(cloud,
             [&] {
               std::vector<std::size_t> all(cloud.size());
               std::iota(all.begin(), all.end(), std::size_t{0});
               return all;
             }(),
             leaf_size) {}

std::size_t KdTree::build(std::size_t begin, std::size_t end) {
  const std::size_t id = nodes_.size();
  nodes_.push_back(Node{begin, end});
  if (end - begin <= leaf_size_) return id;

  std::size_t axis = 0;
  double widest = -1.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t s = begin; s < end; ++s) {
      const double v = coords_[s * dim_ + k];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > widest) {
      widest = hi - lo;
      axis = k;
    }
  }
  if (widest <= 0.0) return id;  // all points coincide

  // Median split on a slot permutation, then apply it to ids_ and coords_.
  std::vector<std::size_t> order(end - begin);
  std::iota(order.begin(), order.end(), begin);
  const std::size_t mid = order.size() / 2;
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(mid), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return coords_[a * dim_ + axis] < coords_[b * dim_ + axis];
                   });
  std::vector<std::size_t> ids(order.size());
  std::vector<double> coords(order.size() * dim_);
  for (std::size_t r = 0; r < order.size(); ++r) {
    ids[r] = ids_[order[r]];
    std::copy_n(coords_.begin() + static_cast<std::ptrdiff_t>(order[r] * dim_), dim_,
                coords.begin() + static_cast<std::ptrdiff_t>(r * dim_));
  }
  std::copy(ids.begin(), ids.end(), ids_.begin() + static_cast<std::ptrdiff_t>(begin));
  std::copy(coords.begin(), coords.end(), coords_.begin() + static_cast<std::ptrdiff_t>(begin * dim_));

  const std::size_t split_slot = begin + mid;
  const double split = coords_[split_slot * dim_ + axis];
  nodes_[id].leaf = false;
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  const std::size_t left = build(begin, split_slot);
  const std::size_t right = build(split_slot, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void KdTree::nearest_rec(std::size_t node_id, std::span<const double> y, double& best) const {
  const Node& node = nodes_[node_id];
  if (node.leaf) {
    for (std::size_t s = node.begin; s < node.end; ++s) best = std::min(best, squared_distance(point(s), y));
    return;
  }
  // Left subtree holds coordinates <= split, right subtree >= split.
  const double diff = y[node.axis] - node.split;
  const std::size_t near = diff <= 0.0 ? node.left : node.right;
  const std::size_t far = diff <= 0.0 ? node.right : node.left;
  nearest_rec(near, y, best);
  if (diff * diff <= best) nearest_rec(far, y, best);
}

double KdTree::nearest_distance(std::span<const double> y) const {
  if (y.size() != dim_) throw Error("dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  nearest_rec(0, y, best);
  return std::sqrt(best);
}

void KdTree::knn_rec(std::size_t node_id, std::span<const double> y, std::size_t k,
                     std::vector<double>& heap) const {
  const Node& node = nodes_[node_id];
  if (node.leaf) {
    for (std::size_t s = node.begin; s < node.end; ++s) {
      const double d = squared_distance(point(s), y);
      if (heap.size() < k) {
        heap.push_back(d);
        std::push_heap(heap.begin(), heap.end());
      } else if (d < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = d;
        std::push_heap(heap.begin(), heap.end());
      }
    }
    return;
  }
  const double diff = y[node.axis] - node.split;
  const std::size_t near = diff <= 0.0 ? node.left : node.right;
  const std::size_t far = diff <= 0.0 ? node.right : node.left;
  knn_rec(near, y, k, heap);
  if (heap.size() < k || diff * diff <= heap.front()) knn_rec(far, y, k, heap);
}

std::vector<double> KdTree::knn_squared(std::span<const double> y, std::size_t k) const {
  if (y.size() != dim_) throw Error("dimension mismatch");
  if (k < 1 || k > ids_.size()) throw Error("k out of range");
  std::vector<double> heap;
  heap.reserve(k);
  knn_rec(0, y, k, heap);
  std::sort_heap(heap.begin(), heap.end());
  return heap;
}

}  // namespace momdist
