#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "momdist/common.hpp"

namespace momdist {

/// Finite set of points in R^d stored row-major. A cloud may be empty (the
/// generators can legitimately produce zero points); every evaluator that
/// needs data rejects empty clouds.
class PointCloud {
 public:
  explicit PointCloud(std::size_t dim);
  PointCloud(std::size_t dim, std::vector<double> coords);

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> mutable_point(std::size_t i) { return {coords_.data() + i * dim_, dim_}; }

  const std::vector<double>& coords() const { return coords_; }

  void push_back(std::span<const double> point);
  void append(const PointCloud& other);
  PointCloud subset(std::span<const std::size_t> indices) const;

  /// Throws unless the cloud holds at least one point.
  void require_nonempty() const;
  /// Throws unless `point` has this cloud's dimension.
  void require_dim(std::span<const double> point) const;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Disjoint blocks S_1..S_Q of point indices. Sizes differ by at most one: the
/// n mod Q leftover points go one each to the lowest-indexed blocks.
class BlockPartition {
 public:
  BlockPartition(std::size_t n, std::vector<std::vector<std::size_t>> blocks);

  std::size_t num_blocks() const { return blocks_.size(); }
  std::size_t num_points() const { return n_; }
  const std::vector<std::size_t>& block(std::size_t q) const { return blocks_[q]; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  /// Block index holding point i.
  std::size_t block_of(std::size_t i) const { return assignment_[i]; }

 private:
  std::size_t n_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> assignment_;
};

/// Round-robin assignment of point positions to Q blocks; with `shuffle` the
/// positions are first permuted by a PRNG seeded with `seed`.
BlockPartition partition(std::size_t n, std::size_t num_blocks, std::uint64_t seed, bool shuffle);

PointCloud read_csv(std::istream& in, bool skip_header = false);
PointCloud read_csv_file(const std::string& path, bool skip_header = false);
void write_csv(std::ostream& out, const PointCloud& cloud);

}  // namespace momdist
