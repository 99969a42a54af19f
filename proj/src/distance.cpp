#include "momdist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace momdist {

double dist_fn(const PointCloud& cloud, std::span<const double> y) {
  cloud.require_nonempty();
  cloud.require_dim(y);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cloud.size(); ++i) best = std::min(best, squared_distance(cloud[i], y));
  return std::sqrt(best);
}

double lower_median(std::span<double> values) {
  if (values.empty()) throw Error("median of an empty set");
  const auto mid = static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  return values[static_cast<std::size_t>(mid)];
}

double momdist(const PointCloud& cloud, const BlockPartition& part, std::span<const double> y) {
  cloud.require_nonempty();
  cloud.require_dim(y);
  if (part.num_points() != cloud.size()) throw Error("inconsistent partition: size differs from cloud");
  std::vector<double> per_block(part.num_blocks());
  for (std::size_t q = 0; q < part.num_blocks(); ++q) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i : part.block(q)) best = std::min(best, squared_distance(cloud[i], y));
    per_block[q] = best;
  }
  return std::sqrt(lower_median(per_block));
}

double dtm(const PointCloud& cloud, std::size_t k, std::span<const double> y, bool kth_only) {
  cloud.require_nonempty();
  cloud.require_dim(y);
  if (k < 1 || k > cloud.size()) throw Error("k out of range");
  std::vector<double> d2(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) d2[i] = squared_distance(cloud[i], y);
  std::partial_sort(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(k), d2.end());
  if (kth_only) return std::sqrt(d2[k - 1]);
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += d2[i];
  return std::sqrt(s / static_cast<double>(k));
}

MomDistEvaluator::MomDistEvaluator(const PointCloud& cloud, const BlockPartition& part)
    : dim_(cloud.dim()) {
  cloud.require_nonempty();
  if (part.num_points() != cloud.size()) throw Error("inconsistent partition: size differs from cloud");
  trees_.reserve(part.num_blocks());
  for (const auto& b : part.blocks()) trees_.emplace_back(cloud, b);
}

double MomDistEvaluator::operator()(std::span<const double> y) const {
  if (y.size() != dim_) throw Error("dimension mismatch");
  std::vector<double> per_block(trees_.size());
  for (std::size_t q = 0; q < trees_.size(); ++q) per_block[q] = trees_[q].nearest_distance(y);
  return lower_median(per_block);
}

DtmEvaluator::DtmEvaluator(const PointCloud& cloud, std::size_t k, bool kth_only)
    : tree_(cloud), k_(k), kth_only_(kth_only) {
  if (k < 1 || k > cloud.size()) throw Error("k out of range");
}

double DtmEvaluator::operator()(std::span<const double> y) const {
  const auto d2 = tree_.knn_squared(y, k_);
  if (kth_only_) return std::sqrt(d2.back());
  double s = 0.0;
  for (double v : d2) s += v;
  return std::sqrt(s / static_cast<double>(k_));
}

std::string describe(const WeightKind& kind) {
  std::ostringstream os;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, weight::PlainDistance>) {
          os << "distance";
        } else if constexpr (std::is_same_v<T, weight::MomDist>) {
          os << "momdist(Q=" << k.num_blocks << ",seed=" << k.seed << (k.shuffle ? ",shuffled" : "")
             << ")";
        } else if constexpr (std::is_same_v<T, weight::Dtm>) {
          os << "dtm(k=" << k.k << (k.kth_only ? ",kth" : ",rms") << ")";
        } else {
          os << "zero";
        }
      },
      kind);
  return os.str();
}

WeightFunction::WeightFunction(const PointCloud& cloud, const WeightKind& kind)
    : kind_(kind), dim_(cloud.dim()) {
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, weight::PlainDistance>) {
          cloud.require_nonempty();
          plain_ = std::make_shared<KdTree>(cloud);
        } else if constexpr (std::is_same_v<T, weight::MomDist>) {
          cloud.require_nonempty();
          const auto part = partition(cloud.size(), k.num_blocks, k.seed, k.shuffle);
          mom_ = std::make_shared<MomDistEvaluator>(cloud, part);
        } else if constexpr (std::is_same_v<T, weight::Dtm>) {
          cloud.require_nonempty();
          dtm_ = std::make_shared<DtmEvaluator>(cloud, k.k, k.kth_only);
        }
      },
      kind);
}

WeightFunction::WeightFunction(const PointCloud& cloud, const BlockPartition& part)
    : kind_(weight::MomDist{part.num_blocks(), 0, false}),
      dim_(cloud.dim()),
      mom_(std::make_shared<MomDistEvaluator>(cloud, part)) {}

double WeightFunction::operator()(std::span<const double> y) const {
  if (y.size() != dim_) throw Error("dimension mismatch");
  if (plain_) return plain_->nearest_distance(y);
  if (mom_) return (*mom_)(y);
  if (dtm_) return (*dtm_)(y);
  return 0.0;
}

std::vector<double> WeightFunction::evaluate(const PointCloud& targets) const {
  if (!targets.empty() && targets.dim() != dim_) throw Error("dimension mismatch");
  std::vector<double> out(targets.size());
  parallel_for(targets.size(), [&](std::size_t i) { out[i] = (*this)(targets[i]); });
  return out;
}

std::vector<double> eval_weights(const PointCloud& cloud, const WeightKind& kind,
                                 const PointCloud& targets) {
  return WeightFunction(cloud, kind).evaluate(targets);
}

}  // namespace momdist
