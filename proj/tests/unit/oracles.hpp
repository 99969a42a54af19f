#pragma once

// Deliberately naive reference implementations used to cross-check the
// library. Nothing here shares code with src/.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "momdist/persistence.hpp"
#include "momdist/point_cloud.hpp"

namespace oracle {

inline double brute_nearest(const momdist::PointCloud& cloud, const std::vector<std::size_t>& subset,
                            std::span<const double> y) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i : subset) {
    double s = 0.0;
    for (std::size_t c = 0; c < y.size(); ++c) s += (cloud[i][c] - y[c]) * (cloud[i][c] - y[c]);
    best = std::min(best, std::sqrt(s));
  }
  return best;
}

inline std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

inline double median_of_minima(const momdist::PointCloud& cloud, const std::vector<std::vector<std::size_t>>& blocks,
                               std::span<const double> y) {
  std::vector<double> minima;
  for (const auto& b : blocks) minima.push_back(brute_nearest(cloud, b, y));
  std::sort(minima.begin(), minima.end());
  return minima[(minima.size() - 1) / 2];
}

inline double brute_dtm(const momdist::PointCloud& cloud, std::size_t k, std::span<const double> y) {
  std::vector<double> d2;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double s = 0.0;
    for (std::size_t c = 0; c < y.size(); ++c) s += (cloud[i][c] - y[c]) * (cloud[i][c] - y[c]);
    d2.push_back(s);
  }
  std::sort(d2.begin(), d2.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += d2[i];
  return std::sqrt(acc / static_cast<double>(k));
}

struct NaivePair {
  int dim;
  double birth, death;
};

// Dense Z/2 boundary matrix, left-to-right reduction with full column scans.
inline std::vector<NaivePair> dense_reduction(const std::vector<momdist::Simplex>& s, bool keep_zero = false,
                                              std::size_t max_dim = 2) {
  const std::size_t m = s.size();
  std::vector<std::vector<char>> col(m, std::vector<char>(m, 0));
  for (std::size_t j = 0; j < m; ++j) {
    const auto& v = s[j].vertices;
    if (v.size() < 2) continue;
    for (std::size_t drop = 0; drop < v.size(); ++drop) {
      std::vector<momdist::Index> face;
      for (std::size_t a = 0; a < v.size(); ++a)
        if (a != drop) face.push_back(v[a]);
      for (std::size_t i = 0; i < j; ++i)
        if (s[i].vertices == face) col[j][i] = 1;
    }
  }
  auto low = [&](std::size_t j) -> long {
    for (std::size_t i = m; i-- > 0;)
      if (col[j][i]) return static_cast<long>(i);
    return -1;
  };
  std::vector<long> lows(m, -1);
  for (std::size_t j = 0; j < m; ++j) {
    bool changed = true;
    while (changed) {
      changed = false;
      const long l = low(j);
      if (l < 0) break;
      for (std::size_t k = 0; k < j; ++k) {
        if (lows[k] == l) {
          for (std::size_t i = 0; i < m; ++i) col[j][i] ^= col[k][i];
          changed = true;
          break;
        }
      }
    }
    lows[j] = low(j);
  }
  std::vector<char> paired(m, 0);
  std::vector<NaivePair> out;
  for (std::size_t j = 0; j < m; ++j) {
    if (lows[j] < 0) continue;
    const auto i = static_cast<std::size_t>(lows[j]);
    paired[i] = paired[j] = 1;
    if (keep_zero || s[j].value > s[i].value)
      out.push_back({static_cast<int>(s[i].vertices.size() - 1), s[i].value, s[j].value});
  }
  for (std::size_t j = 0; j < m; ++j)
    if (!paired[j] && s[j].vertices.size() - 1 < max_dim) out.push_back({static_cast<int>(s[j].vertices.size() - 1), s[j].value, momdist::kInfinity});
  std::sort(out.begin(), out.end(), [](const NaivePair& a, const NaivePair& b) {
    return std::tie(a.dim, a.birth, a.death) < std::tie(b.dim, b.birth, b.death);
  });
  return out;
}

// Exhaustive bottleneck over all multi-bijections of finite diagrams: both
// sides are padded with diagonal slots and every permutation is tried.
inline double exhaustive_bottleneck(const std::vector<std::pair<double, double>>& a,
                                    const std::vector<std::pair<double, double>>& b) {
  const std::size_t na = a.size(), nb = b.size(), total = na + nb;
  std::vector<std::size_t> perm(total);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      const std::size_t j = perm[i];
      const bool real_a = i < na, real_b = j < nb;
      double c = 0.0;
      if (real_a && real_b)
        c = std::max(std::abs(a[i].first - b[j].first), std::abs(a[i].second - b[j].second));
      else if (real_a)
        c = (a[i].second - a[i].first) / 2.0;
      else if (real_b)
        c = (b[j].second - b[j].first) / 2.0;
      worst = std::max(worst, c);
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Number of connected components of the graph on `alive` vertices whose
// edges are those with time <= t.
inline std::size_t components_at(const std::vector<double>& times, std::size_t n, double t) {
  std::vector<std::size_t> label(n, static_cast<std::size_t>(-1));
  std::size_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (times[s * n + s] > t || label[s] != static_cast<std::size_t>(-1)) continue;
    ++count;
    std::vector<std::size_t> stack{s};
    label[s] = count;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v)
        if (v != u && label[v] == static_cast<std::size_t>(-1) && times[u * n + v] <= t) {
          label[v] = count;
          stack.push_back(v);
        }
    }
  }
  return count;
}

inline momdist::PointCloud random_cloud(std::size_t n, std::size_t dim, std::mt19937_64& rng, double lo = -1.0,
                                        double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> c(n * dim);
  for (double& v : c) v = u(rng);
  return momdist::PointCloud(dim, std::move(c));
}

inline std::vector<std::pair<double, double>> finite_points(const momdist::PersistenceDiagram& d, int dim) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : d.pairs)
    if (p.dim == dim && !p.essential()) out.emplace_back(p.birth, p.death);
  return out;
}

}  // namespace oracle
