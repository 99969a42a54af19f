#include "momdist/point_cloud.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "momdist/rng.hpp"

namespace momdist {

PointCloud::PointCloud(std::size_t dim) : PointCloud(dim, {}) {}

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw Error("point dimension must be at least 1");
  if (coords_.size() % dim_ != 0) throw Error("coordinate count is not a multiple of the dimension");
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error("empty point cloud");
  PointCloud cloud(rows.front().size());
  for (const auto& r : rows) cloud.push_back(r);
  return cloud;
}

void PointCloud::push_back(std::span<const double> point) {
  require_dim(point);
  coords_.insert(coords_.end(), point.begin(), point.end());
}

void PointCloud::append(const PointCloud& other) {
  if (other.empty()) return;
  if (other.dim_ != dim_) throw Error("dimension mismatch");
  coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
}

PointCloud PointCloud::subset(std::span<const std::size_t> indices) const {
  PointCloud out(dim_);
  out.coords_.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    if (i >= size()) throw Error("point index out of range");
    out.push_back((*this)[i]);
  }
  return out;
}

void PointCloud::require_nonempty() const {
  if (empty()) throw Error("empty point cloud");
}

void PointCloud::require_dim(std::span<const double> point) const {
  if (point.size() != dim_) {
    throw Error("dimension mismatch: expected " + std::to_string(dim_) + ", got " +
                std::to_string(point.size()));
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

BlockPartition::BlockPartition(std::size_t n, std::vector<std::vector<std::size_t>> blocks)
    : n_(n), blocks_(std::move(blocks)), assignment_(n, blocks_.size()) {
  if (blocks_.empty()) throw Error("invalid block count");
  for (std::size_t q = 0; q < blocks_.size(); ++q) {
    if (blocks_[q].empty()) throw Error("empty block");
    for (std::size_t i : blocks_[q]) {
      if (i >= n_) throw Error("inconsistent partition: index out of range");
      if (assignment_[i] != blocks_.size()) throw Error("inconsistent partition: blocks overlap");
      assignment_[i] = q;
    }
  }
  for (std::size_t a : assignment_) {
    if (a == blocks_.size()) throw Error("inconsistent partition: point not covered");
  }
}

BlockPartition partition(std::size_t n, std::size_t num_blocks, std::uint64_t seed, bool shuffle) {
  if (num_blocks < 1 || num_blocks > n) throw Error("invalid block count");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (shuffle) {
    Rng rng(seed);
    order = random_permutation(n, rng);
  }
  std::vector<std::vector<std::size_t>> blocks(num_blocks);
  for (auto& b : blocks) b.reserve(n / num_blocks + 1);
  for (std::size_t pos = 0; pos < n; ++pos) blocks[pos % num_blocks].push_back(order[pos]);
  return BlockPartition(n, std::move(blocks));
}

PointCloud read_csv(std::istream& in, bool skip_header) {
  std::string line;
  if (skip_header) std::getline(in, line);
  std::vector<double> coords;
  std::size_t dim = 0;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t count = 0;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw Error("malformed number on row " + std::to_string(row) + ": '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) {
        throw Error("malformed number on row " + std::to_string(row) + ": '" + cell + "'");
      }
      coords.push_back(v);
      ++count;
    }
    if (dim == 0) dim = count;
    if (count != dim) throw Error("row " + std::to_string(row) + " has inconsistent dimension");
  }
  if (dim == 0) throw Error("empty point cloud");
  return PointCloud(dim, std::move(coords));
}

PointCloud read_csv_file(const std::string& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_csv(in, skip_header);
}

void write_csv(std::ostream& out, const PointCloud& cloud) {
  const auto old = out.precision(17);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud[i];
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out << ',';
      out << p[k];
    }
    out << '\n';
  }
  out.precision(old);
}

}  // namespace momdist
