#include "momdist/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace momdist {

std::vector<PersistencePair> PersistenceDiagram::in_dim(int dim) const {
  std::vector<PersistencePair> out;
  for (const auto& p : pairs)
    if (p.dim == dim) out.push_back(p);
  return out;
}

void PersistenceDiagram::sort() {
  std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
    return std::tie(a.dim, a.birth, a.death) < std::tie(b.dim, b.birth, b.death);
  });
}

namespace {

struct VertexTupleHash {
  std::size_t operator()(const std::vector<Index>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (Index x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

// Symmetric difference of two ascending index lists.
void add_column(std::vector<std::size_t>& target, const std::vector<std::size_t>& source,
                std::vector<std::size_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

PersistenceDiagram reduce(const FilteredComplex& complex, bool keep_zero) {
  const auto& s = complex.simplices;
  const std::size_t m = s.size();
  std::unordered_map<std::vector<Index>, std::size_t, VertexTupleHash> position;
  position.reserve(m);

  std::vector<std::vector<std::size_t>> columns(m);
  std::vector<Index> face;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& v = s[j].vertices;
    if (v.empty()) throw Error("filtration order violated: empty simplex");
    for (std::size_t a = 1; a < v.size(); ++a)
      if (v[a - 1] >= v[a]) throw Error("filtration order violated: vertices not increasing");
    if (v.size() > 1) {
      for (std::size_t drop = 0; drop < v.size(); ++drop) {
        face.clear();
        for (std::size_t a = 0; a < v.size(); ++a)
          if (a != drop) face.push_back(v[a]);
        const auto it = position.find(face);
        if (it == position.end()) throw Error("filtration order violated: face missing or after coface");
        if (s[it->second].value > s[j].value) throw Error("filtration order violated: face value exceeds coface");
        columns[j].push_back(it->second);
      }
      std::sort(columns[j].begin(), columns[j].end());
    }
    if (!position.emplace(v, j).second) throw Error("filtration order violated: duplicate simplex");
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner_of_low(m, kNone);
  std::vector<bool> destroyed(m, false);
  std::vector<std::size_t> scratch;
  PersistenceDiagram out;
  out.source = "reduce";
  for (std::size_t j = 0; j < m; ++j) {
    auto& col = columns[j];
    while (!col.empty() && owner_of_low[col.back()] != kNone) add_column(col, columns[owner_of_low[col.back()]], scratch);
    if (col.empty()) continue;
    const std::size_t low = col.back();
    owner_of_low[low] = j;
    destroyed[low] = true;
    const double birth = s[low].value;
    const double death = s[j].value;
    if (keep_zero || death > birth) out.pairs.push_back({static_cast<int>(s[low].dim()), birth, death});
  }
  // Top-dimensional cycles never meet a coface in a truncated complex.
  for (std::size_t j = 0; j < m; ++j) {
    if (columns[j].empty() && !destroyed[j] && s[j].dim() < complex.max_dim)
      out.pairs.push_back({static_cast<int>(s[j].dim()), s[j].value, kInfinity});
  }
  out.sort();
  return out;
}

double max_persistence(const PersistenceDiagram& diagram, int dim) {
  double best = 0.0;
  for (const auto& p : diagram.pairs)
    if (p.dim == dim && !p.essential()) best = std::max(best, p.persistence());
  return best;
}

namespace {

struct Edge {
  double value;
  Index a, b;
};

constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

// A triangle enters with its last edge; `rank` is that edge's position in
// the sorted edge list, `key` the lexicographic rank of the vertex triple.
struct Triangle {
  std::uint32_t rank;
  std::uint64_t key;
};

struct TriangleAfter {
  bool operator()(const Triangle& x, const Triangle& y) const {
    return x.rank > y.rank || (x.rank == y.rank && x.key > y.key);
  }
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void link(std::size_t child, std::size_t root) { parent_[child] = root; }

 private:
  std::vector<std::size_t> parent_;
};

// Sparse Z/2 cochain over triangles. Entries are spread over rank buckets;
// only the lowest nonempty bucket is kept as a heap, so pivot queries touch
// a small working set even when the cochain holds millions of entries.
class WorkingColumn {
 public:
  explicit WorkingColumn(std::size_t num_ranks) {
    while ((num_ranks >> shift_) > 4096) ++shift_;
    buckets_.resize((num_ranks >> shift_) + 1);
    heaped_.assign(buckets_.size(), 0);
    lowest_ = buckets_.size();
  }

  void push(const Triangle& t) {
    const std::size_t b = t.rank >> shift_;
    auto& bucket = buckets_[b];
    if (bucket.empty()) touched_.push_back(b);
    bucket.push_back(t);
    if (heaped_[b]) std::push_heap(bucket.begin(), bucket.end(), TriangleAfter{});
    lowest_ = std::min(lowest_, b);
  }

  // Smallest surviving entry, cancelling equal pairs on the way.
  std::optional<Triangle> pivot() {
    while (lowest_ < buckets_.size()) {
      auto& bucket = buckets_[lowest_];
      if (!heaped_[lowest_]) {
        std::make_heap(bucket.begin(), bucket.end(), TriangleAfter{});
        heaped_[lowest_] = 1;
      }
      while (!bucket.empty()) {
        std::pop_heap(bucket.begin(), bucket.end(), TriangleAfter{});
        const Triangle top = bucket.back();
        bucket.pop_back();
        if (!bucket.empty() && bucket.front().key == top.key) {
          std::pop_heap(bucket.begin(), bucket.end(), TriangleAfter{});
          bucket.pop_back();
          continue;
        }
        bucket.push_back(top);
        std::push_heap(bucket.begin(), bucket.end(), TriangleAfter{});
        return top;
      }
      ++lowest_;
    }
    return std::nullopt;
  }

  void clear() {
    for (std::size_t b : touched_) {
      buckets_[b].clear();
      heaped_[b] = 0;
    }
    touched_.clear();
    lowest_ = buckets_.size();
  }

 private:
  unsigned shift_ = 0;
  std::vector<std::vector<Triangle>> buckets_;
  std::vector<char> heaped_;
  std::vector<std::size_t> touched_;
  std::size_t lowest_;
};

class FlagCohomology {
 public:
  FlagCohomology(std::vector<std::uint32_t> ranks, std::size_t n) : ranks_(std::move(ranks)), n_(n) {}

  std::uint32_t rank(std::size_t i, std::size_t j) const { return ranks_[i * n_ + j]; }

  std::uint64_t key(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return (a * n_ + b) * n_ + c;
  }

  void push_coboundary(const Edge& e, std::uint32_t r, WorkingColumn& column) const {
    const std::uint32_t* ra = &ranks_[e.a * n_];
    const std::uint32_t* rb = &ranks_[e.b * n_];
    for (std::size_t k = 0; k < n_; ++k) {
      const std::uint32_t v = std::max({r, ra[k], rb[k]});
      if (v == kAbsent || k == e.a || k == e.b) continue;
      column.push({v, key(e.a, e.b, k)});
    }
  }

  // Smallest cofacet of e when one enters together with e; k ascending
  // enumerates cofacets in increasing key order.
  std::optional<Triangle> zero_length_cofacet(const Edge& e, std::uint32_t r) const {
    const std::uint32_t* ra = &ranks_[e.a * n_];
    const std::uint32_t* rb = &ranks_[e.b * n_];
    for (std::size_t k = 0; k < n_; ++k) {
      if (ra[k] < r && rb[k] < r && k != e.a && k != e.b) return Triangle{r, key(e.a, e.b, k)};
    }
    return std::nullopt;
  }

  // First triangle after `from` in filtration order on which the cochain
  // has a nonzero coboundary. `cochain` is its edge indicator (n x n) and
  // `support[v]` lists the cochain neighbours of v, possibly with stale or
  // repeated entries.
  std::optional<Triangle> next_coboundary_entry(const std::vector<Edge>& edges, const std::vector<std::uint8_t>& cochain,
                                                const std::vector<std::vector<Index>>& support,
                                                const Triangle& from) const {
    for (std::size_t r = from.rank; r < edges.size(); ++r) {
      const std::size_t u = edges[r].a, v = edges[r].b;
      const std::uint32_t* ru = &ranks_[u * n_];
      const std::uint32_t* rv = &ranks_[v * n_];
      const std::uint8_t* cu = &cochain[u * n_];
      const std::uint8_t* cv = &cochain[v * n_];
      const std::uint64_t floor = r == from.rank ? from.key : 0;
      const bool first_rank = r == from.rank;
      auto entry = [&](std::size_t k) -> std::optional<Triangle> {
        if (k == u || k == v || ru[k] >= r || rv[k] >= r) return std::nullopt;
        const std::uint64_t t = key(u, v, k);
        if (first_rank && t <= floor) return std::nullopt;
        return Triangle{static_cast<std::uint32_t>(r), t};
      };
      if (cu[v]) {
        // Every cofacet of uv in the support: k ascending gives keys ascending.
        for (std::size_t k = 0; k < n_; ++k) {
          if (cu[k] ^ cv[k]) continue;
          if (auto t = entry(k)) return t;
        }
        continue;
      }
      // Only triangles meeting the cochain through uk or vk can be nonzero.
      std::optional<Triangle> best;
      for (const auto* list : {&support[u], &support[v]}) {
        for (Index k : *list) {
          if (!(cu[k] ^ cv[k])) continue;
          if (auto t = entry(k); t && (!best || t->key < best->key)) best = t;
        }
      }
      if (best) return best;
    }
    return std::nullopt;
  }

 private:
  std::vector<std::uint32_t> ranks_;
  std::size_t n_;
};

}  // namespace

PersistenceDiagram flag_persistence(std::span<const double> times, std::size_t n, std::size_t max_dim,
                                    bool keep_zero) {
  if (times.size() != n * n) throw Error("edge-time matrix has the wrong size");
  PersistenceDiagram out;
  out.source = "flag";
  auto emit = [&](int dim, double birth, double death) {
    if (keep_zero || death > birth) out.pairs.push_back({dim, birth, death});
  };

  std::vector<std::size_t> vertices;
  for (std::size_t i = 0; i < n; ++i)
    if (times[i * n + i] != kInfinity) vertices.push_back(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (times[i * n + j] != kInfinity) {
        if (times[i * n + i] == kInfinity || times[j * n + j] == kInfinity)
          throw Error("filtration order violated: edge present without its vertices");
        edges.push_back({times[i * n + j], static_cast<Index>(i), static_cast<Index>(j)});
      }
  if (edges.size() >= kAbsent) throw Error("too many edges");
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.value, x.a, x.b) < std::tie(y.value, y.a, y.b);
  });

  // H0, elder rule on (vertex time, index).
  UnionFind uf(n);
  std::vector<bool> negative(edges.size(), false);
  auto elder = [&](std::size_t x, std::size_t y) {
    return std::tie(times[x * n + x], x) < std::tie(times[y * n + y], y);
  };
  for (std::size_t e = 0; e < edges.size(); ++e) {
    std::size_t ra = uf.find(edges[e].a);
    std::size_t rb = uf.find(edges[e].b);
    if (ra == rb) continue;
    if (elder(rb, ra)) std::swap(ra, rb);
    emit(0, times[rb * n + rb], edges[e].value);
    uf.link(rb, ra);
    negative[e] = true;
  }
  for (std::size_t v : vertices)
    if (uf.find(v) == v) emit(0, times[v * n + v], kInfinity);

  if (max_dim >= 2) {
    // Triangles are ordered by (last edge rank, key), a refinement of the
    // filtration order; diagram values are read back from the edge list.
    std::vector<std::uint32_t> ranks(n * n, kAbsent);
    for (std::size_t r = 0; r < edges.size(); ++r) {
      ranks[edges[r].a * n + edges[r].b] = static_cast<std::uint32_t>(r);
      ranks[edges[r].b * n + edges[r].a] = static_cast<std::uint32_t>(r);
    }
    FlagCohomology cob(std::move(ranks), n);
    constexpr std::size_t kScanAfter = 64;
    WorkingColumn column(edges.size());
    std::vector<std::uint8_t> cochain(n * n, 0);
    std::vector<std::size_t> touched;
    std::vector<std::vector<Index>> support(n);
    std::unordered_map<std::uint64_t, std::uint32_t> pivot_owner;  // triangle key -> edge rank
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> reduction;  // edge -> added edges
    std::vector<std::uint32_t> combo;
    for (std::size_t idx = edges.size(); idx-- > 0;) {
      if (negative[idx]) continue;
      const auto r = static_cast<std::uint32_t>(idx);
      const Edge& e = edges[idx];
      if (auto cof = cob.zero_length_cofacet(e, r); cof && !pivot_owner.count(cof->key)) {
        pivot_owner.emplace(cof->key, r);
        emit(1, e.value, e.value);
        continue;
      }
      column.clear();
      combo.clear();
      cob.push_coboundary(e, r, column);
      std::optional<Triangle> pivot = column.pivot();
      auto add_owner = [&](std::uint32_t other, auto&& add_edge) {
        add_edge(other);
        if (const auto extra = reduction.find(other); extra != reduction.end())
          for (std::uint32_t x : extra->second) add_edge(x);
      };
      // Few additions: merge coboundaries in the working column.
      while (pivot && combo.size() < kScanAfter) {
        const auto it = pivot_owner.find(pivot->key);
        if (it == pivot_owner.end()) break;
        add_owner(it->second, [&](std::uint32_t x) {
          combo.push_back(x);
          cob.push_coboundary(edges[x], x, column);
        });
        pivot = column.pivot();
      }
      // Many additions: the pivot only moves forward, so keep the cochain as
      // an edge indicator and scan triangles in order from the last pivot.
      if (pivot && combo.size() >= kScanAfter && pivot_owner.count(pivot->key)) {
        auto flip = [&](std::uint32_t x) {
          const Index a = edges[x].a, b = edges[x].b;
          const std::size_t i = a * n + b;
          if (!cochain[i]) {
            touched.push_back(i);
            support[a].push_back(b);
            support[b].push_back(a);
          }
          cochain[i] ^= 1;
          cochain[b * n + a] ^= 1;
        };
        flip(r);
        for (std::uint32_t x : combo) flip(x);
        while (pivot) {
          const auto it = pivot_owner.find(pivot->key);
          if (it == pivot_owner.end()) break;
          add_owner(it->second, [&](std::uint32_t x) {
            combo.push_back(x);
            flip(x);
          });
          pivot = cob.next_coboundary_entry(edges, cochain, support, *pivot);
        }
        for (std::size_t i : touched) {
          cochain[i] = 0;
          cochain[(i % n) * n + i / n] = 0;
          support[i / n].clear();
          support[i % n].clear();
        }
        touched.clear();
      }
      if (!pivot) {
        emit(1, e.value, kInfinity);
        continue;
      }
      pivot_owner.emplace(pivot->key, r);
      // Keep the combination reduced mod 2.
      std::sort(combo.begin(), combo.end());
      std::vector<std::uint32_t> odd;
      for (std::size_t a = 0; a < combo.size();) {
        std::size_t b = a;
        while (b < combo.size() && combo[b] == combo[a]) ++b;
        if ((b - a) % 2 == 1) odd.push_back(combo[a]);
        a = b;
      }
      if (!odd.empty()) reduction.emplace(r, std::move(odd));
      emit(1, e.value, edges[pivot->rank].value);
    }
  }
  out.sort();
  return out;
}

PersistenceDiagram weighted_rips_diagram(const PointCloud& cloud, std::span<const double> weights,
                                         PowerParam p, std::size_t max_dim, std::optional<double> t_max,
                                         bool keep_zero) {
  cloud.require_nonempty();
  if (max_dim < 1 || max_dim > 2) throw Error("dimension cap: max_dim must be 1 or 2");
  if (t_max && !(*t_max > 0.0)) throw Error("t_max must be positive");
  const std::size_t n = cloud.size();
  auto times = edge_time_matrix(cloud, weights, p, t_max.value_or(kInfinity));
  if (!t_max && max_dim >= 2) {
    // Past the cone time every class except one component is dead.
    const double cone = enclosing_time(times, n);
    for (double& v : times)
      if (v > cone) v = kInfinity;
  }
  auto d = flag_persistence(times, n, max_dim, keep_zero);
  d.source = "weighted-rips";
  return d;
}

}  // namespace momdist
