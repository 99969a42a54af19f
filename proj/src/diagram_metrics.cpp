#include "momdist/diagram_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace momdist {

namespace {

// Hopcroft-Karp maximum matching; adj[u] lists right vertices of left u.
class HopcroftKarp {
 public:
  HopcroftKarp(std::size_t left, std::size_t right, const std::vector<std::vector<std::size_t>>& adj)
      : adj_(adj), match_l_(left, kFree), match_r_(right, kFree), dist_(left) {}

  std::size_t run() {
    std::size_t size = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < match_l_.size(); ++u)
        if (match_l_[u] == kFree && dfs(u)) ++size;
    }
    return size;
  }

  const std::vector<std::size_t>& match_left() const { return match_l_; }
  static constexpr std::size_t kFree = static_cast<std::size_t>(-1);

 private:
  bool bfs() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < match_l_.size(); ++u) {
      if (match_l_[u] == kFree) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kFree;
      }
    }
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj_[u]) {
        const std::size_t w = match_r_[v];
        if (w == kFree) {
          found = true;
        } else if (dist_[w] == kFree) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      const std::size_t w = match_r_[v];
      if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_l_[u] = v;
        match_r_[v] = u;
        return true;
      }
    }
    dist_[u] = kFree;
    return false;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<std::size_t> match_l_, match_r_, dist_;
};

struct Pt {
  double birth, death;
  long index;  // position in the source diagram
  double diag() const { return 0.5 * (death - birth); }
};

double linf(const Pt& x, const Pt& y) { return std::max(std::abs(x.birth - y.birth), std::abs(x.death - y.death)); }

// Every point whose diagonal cost exceeds eps must be matched across within
// eps. A matching covering the heavy points of each side separately exists
// iff one covering both does (Mendelsohn-Dulmage).
bool feasible(const std::vector<Pt>& a, const std::vector<Pt>& b, double eps) {
  auto side_ok = [eps](const std::vector<Pt>& from, const std::vector<Pt>& to) {
    std::vector<std::vector<std::size_t>> adj;
    for (const auto& x : from) {
      if (x.diag() <= eps) continue;
      auto& row = adj.emplace_back();
      for (std::size_t j = 0; j < to.size(); ++j)
        if (linf(x, to[j]) <= eps) row.push_back(j);
      if (row.empty()) return false;
    }
    if (adj.empty()) return true;
    HopcroftKarp hk(adj.size(), to.size(), adj);
    return hk.run() == adj.size();
  };
  return side_ok(a, b) && side_ok(b, a);
}

// Full matching at threshold eps on the graph augmented with diagonal copies.
std::vector<MatchedPair> matching_at(const std::vector<Pt>& a, const std::vector<Pt>& b, double eps) {
  const std::size_t na = a.size(), nb = b.size();
  // Left: a (0..na), diagonal copies of b (na..na+nb). Right: b, diagonal copies of a.
  std::vector<std::vector<std::size_t>> adj(na + nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j)
      if (linf(a[i], b[j]) <= eps) adj[i].push_back(j);
    if (a[i].diag() <= eps) adj[i].push_back(nb + i);
  }
  for (std::size_t j = 0; j < nb; ++j) {
    if (b[j].diag() <= eps) adj[na + j].push_back(j);
    for (std::size_t i = 0; i < na; ++i) adj[na + j].push_back(nb + i);
  }
  HopcroftKarp hk(na + nb, nb + na, adj);
  if (hk.run() != na + nb) throw Error("bottleneck: no perfect matching at the optimal threshold");
  std::vector<MatchedPair> out;
  for (std::size_t u = 0; u < na + nb; ++u) {
    const std::size_t v = hk.match_left()[u];
    const bool left_real = u < na, right_real = v < nb;
    if (!left_real && !right_real) continue;
    out.emplace_back(left_real ? a[u].index : kDiagonal, right_real ? b[v].index : kDiagonal);
  }
  return out;
}

BottleneckResult bottleneck_one_dim(const PersistenceDiagram& da, const PersistenceDiagram& db, int dim,
                                    bool want_matching) {
  std::vector<Pt> fa, fb, ea, eb;
  for (std::size_t i = 0; i < da.pairs.size(); ++i) {
    const auto& p = da.pairs[i];
    if (p.dim != dim) continue;
    (p.essential() ? ea : fa).push_back({p.birth, p.death, static_cast<long>(i)});
  }
  for (std::size_t i = 0; i < db.pairs.size(); ++i) {
    const auto& p = db.pairs[i];
    if (p.dim != dim) continue;
    (p.essential() ? eb : fb).push_back({p.birth, p.death, static_cast<long>(i)});
  }

  BottleneckResult res;
  std::vector<MatchedPair> matching;
  if (ea.size() != eb.size()) {
    res.distance = kInfinity;
    return res;
  }
  auto by_birth = [](const Pt& x, const Pt& y) { return x.birth < y.birth; };
  std::sort(ea.begin(), ea.end(), by_birth);
  std::sort(eb.begin(), eb.end(), by_birth);
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    essential = std::max(essential, std::abs(ea[i].birth - eb[i].birth));
    matching.emplace_back(ea[i].index, eb[i].index);
  }

  std::vector<double> candidates{0.0};
  candidates.reserve(fa.size() * fb.size() + fa.size() + fb.size() + 1);
  for (const auto& x : fa) candidates.push_back(x.diag());
  for (const auto& y : fb) candidates.push_back(y.diag());
  for (const auto& x : fa)
    for (const auto& y : fb) candidates.push_back(linf(x, y));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // The largest candidate is always feasible (everything to the diagonal or
  // any pairing is within it).
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(fa, fb, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const double finite = candidates[lo];
  res.distance = std::max(essential, finite);
  if (want_matching) {
    auto rest = matching_at(fa, fb, finite);
    matching.insert(matching.end(), rest.begin(), rest.end());
    res.matching = std::move(matching);
  }
  return res;
}

}  // namespace

BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim, double tol,
                            bool want_matching) {
  if (!(tol > 0.0)) throw Error("bottleneck tolerance must be positive");
  if (dim != kAllDims) return bottleneck_one_dim(a, b, dim, want_matching);
  int top = 0;
  for (const auto& p : a.pairs) top = std::max(top, p.dim);
  for (const auto& p : b.pairs) top = std::max(top, p.dim);
  BottleneckResult res;
  if (want_matching) res.matching.emplace();
  for (int k = 0; k <= top; ++k) {
    auto r = bottleneck_one_dim(a, b, k, want_matching);
    res.distance = std::max(res.distance, r.distance);
    if (want_matching && r.matching) res.matching->insert(res.matching->end(), r.matching->begin(), r.matching->end());
  }
  return res;
}

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim) {
  return bottleneck(a, b, dim).distance;
}

double hausdorff(const PointCloud& x, const PointCloud& y) {
  x.require_nonempty();
  y.require_nonempty();
  auto directed = [](const PointCloud& from, const PointCloud& to) {
    const KdTree tree(to);
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) worst = std::max(worst, tree.nearest_distance(from[i]));
    return worst;
  };
  return std::max(directed(x, y), directed(y, x));
}

double birth_influence(const WeightFunction& clean, const WeightFunction& contaminated, std::span<const double> x0) {
  return clean(x0) - contaminated(x0);
}

double winf_influence(const WeightFunction& clean, const WeightFunction& contaminated, const PointCloud& eval_points) {
  if (eval_points.empty()) throw Error("winf_influence needs at least one evaluation point");
  const auto a = clean.evaluate(eval_points);
  const auto b = contaminated.evaluate(eval_points);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace momdist
