#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "momdist/diagram_metrics.hpp"
#include "momdist/persistence.hpp"
#include "oracles.hpp"

using namespace momdist;

namespace {

PersistenceDiagram dgm(std::initializer_list<PersistencePair> pairs) {
  PersistenceDiagram d;
  d.pairs = pairs;
  return d;
}

PersistenceDiagram random_diagram(std::mt19937_64& rng, std::size_t count, int dim = 1) {
  std::uniform_real_distribution<double> u(0.0, 3.0), len(0.0, 2.0);
  PersistenceDiagram d;
  for (std::size_t i = 0; i < count; ++i) {
    const double b = u(rng);
    d.pairs.push_back({dim, b, b + len(rng)});
  }
  return d;
}

double linf(const PersistencePair& x, const PersistencePair& y) {
  if (x.essential() || y.essential()) return std::abs(x.birth - y.birth);
  return std::max(std::abs(x.birth - y.birth), std::abs(x.death - y.death));
}

}  // namespace

TEST_CASE("bottleneck examples") {
  auto a = dgm({{1, 0.0, 2.0}, {1, 0.5, 3.0}});
  CHECK(bottleneck_distance(a, a, 1) == 0.0);
  CHECK(bottleneck_distance(dgm({{1, 0.0, 2.0}}), dgm({}), 1) == 1.0);
  CHECK(bottleneck_distance(dgm({{1, 0.0, 4.0}}), dgm({{1, 1.0, 4.0}}), 1) == 1.0);
  CHECK(bottleneck_distance(dgm({}), dgm({}), 0) == 0.0);
}

TEST_CASE("bottleneck matches exhaustive enumeration on small diagrams") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 400; ++trial) {
    auto a = random_diagram(rng, trial % 5);
    auto b = random_diagram(rng, (trial / 5) % 5);
    const double fast = bottleneck_distance(a, b, 1);
    const double slow = oracle::exhaustive_bottleneck(oracle::finite_points(a, 1), oracle::finite_points(b, 1));
    REQUIRE(std::abs(fast - slow) <= 1e-9);
  }
}

TEST_CASE("bottleneck is symmetric and satisfies the triangle inequality") {
  std::mt19937_64 rng(52);
  const double tol = 1e-9;
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_diagram(rng, 1 + trial % 9);
    auto b = random_diagram(rng, 1 + trial % 7);
    auto c = random_diagram(rng, 1 + trial % 5);
    const double ab = bottleneck_distance(a, b, 1), ba = bottleneck_distance(b, a, 1);
    CHECK(ab == ba);
    CHECK(bottleneck_distance(a, a, 1) == 0.0);
    CHECK(bottleneck_distance(a, c, 1) <= ab + bottleneck_distance(b, c, 1) + 2 * tol);
  }
}

TEST_CASE("bottleneck handles essential classes separately") {
  auto a = dgm({{0, 0.0, kInfinity}, {0, 1.0, kInfinity}, {0, 0.0, 0.2}});
  auto b = dgm({{0, 0.3, kInfinity}, {0, 0.9, kInfinity}});
  CHECK(bottleneck_distance(a, b, 0) == doctest::Approx(0.3));
  auto c = dgm({{0, 0.3, kInfinity}});
  CHECK(std::isinf(bottleneck_distance(a, c, 0)));
  CHECK(bottleneck_distance(a, c, 1) == 0.0);
}

TEST_CASE("all-dimension distance is the maximum over dimensions") {
  auto a = dgm({{0, 0.0, 1.0}, {1, 0.0, 4.0}});
  auto b = dgm({{0, 0.0, 1.5}, {1, 1.0, 4.0}});
  CHECK(bottleneck_distance(a, b, 0) == doctest::Approx(0.5));
  CHECK(bottleneck_distance(a, b, 1) == doctest::Approx(1.0));
  CHECK(bottleneck_distance(a, b, kAllDims) == doctest::Approx(1.0));
}

TEST_CASE("bottleneck matching is a valid multi-bijection achieving the distance") {
  std::mt19937_64 rng(53);
  const double tol = 1e-9;
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_diagram(rng, trial % 12);
    auto b = random_diagram(rng, (trial * 7) % 10);
    a.pairs.push_back({1, 0.25, kInfinity});
    b.pairs.push_back({1, 0.5, kInfinity});
    auto r = bottleneck(a, b, 1, tol, true);
    REQUIRE(r.matching.has_value());
    std::vector<int> used_a(a.pairs.size(), 0), used_b(b.pairs.size(), 0);
    double worst = 0.0;
    for (auto [i, j] : *r.matching) {
      REQUIRE((i != kDiagonal || j != kDiagonal));
      if (i != kDiagonal) ++used_a[static_cast<std::size_t>(i)];
      if (j != kDiagonal) ++used_b[static_cast<std::size_t>(j)];
      double cost;
      if (i == kDiagonal) cost = b.pairs[static_cast<std::size_t>(j)].persistence() / 2.0;
      else if (j == kDiagonal) cost = a.pairs[static_cast<std::size_t>(i)].persistence() / 2.0;
      else cost = linf(a.pairs[static_cast<std::size_t>(i)], b.pairs[static_cast<std::size_t>(j)]);
      worst = std::max(worst, cost);
    }
    for (int u : used_a) CHECK(u == 1);
    for (int u : used_b) CHECK(u == 1);
    CHECK(worst <= r.distance + tol);
  }
}

TEST_CASE("bottleneck rejects a nonpositive tolerance") {
  CHECK_THROWS_AS(bottleneck(dgm({}), dgm({}), 0, 0.0), Error);
  CHECK_THROWS_AS(bottleneck(dgm({}), dgm({}), 0, -1.0), Error);
}

TEST_CASE("unweighted Rips H0 diagrams are stable under Hausdorff perturbation") {
  std::mt19937_64 rng(54);
  std::normal_distribution<double> jitter(0.0, 0.05);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = oracle::random_cloud(20 + trial, 2, rng);
    PointCloud y(2);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double p[2] = {x[i][0] + jitter(rng), x[i][1] + jitter(rng)};
      y.push_back(p);
    }
    if (trial % 3 == 0) {
      const double extra[2] = {0.0, 0.0};
      y.push_back(extra);
    }
    const std::vector<double> wx(x.size(), 0.0), wy(y.size(), 0.0);
    auto dx = weighted_rips_diagram(x, wx, PowerParam::finite(1), 1);
    auto dy = weighted_rips_diagram(y, wy, PowerParam::finite(1), 1);
    CHECK(bottleneck_distance(dx, dy, 0) <= hausdorff(x, y) + 1e-12);
  }
}

TEST_CASE("hausdorff distance") {
  PointCloud a(1, {0.0, 1.0}), b(1, {0.0, 3.0});
  CHECK(hausdorff(a, b) == 2.0);
  CHECK(hausdorff(a, a) == 0.0);
}

TEST_CASE("birth and sup-norm influence") {
  std::mt19937_64 rng(55);
  auto clean = oracle::random_cloud(50, 2, rng);
  WeightFunction f(clean, weight::PlainDistance{});
  const double x0[2] = {0.1, -0.2};
  CHECK(birth_influence(f, f, x0) == 0.0);

  PointCloud dirty = clean;
  dirty.push_back(x0);
  WeightFunction g(dirty, weight::PlainDistance{});
  CHECK(birth_influence(f, g, x0) == doctest::Approx(f(x0)));
  CHECK(g(x0) == 0.0);

  auto grid = oracle::random_cloud(30, 2, rng);
  CHECK(winf_influence(f, f, grid) == 0.0);
  const auto fg = f.evaluate(grid);
  CHECK(winf_influence(f, WeightFunction(clean, weight::Zero{}), grid) ==
        doctest::Approx(*std::max_element(fg.begin(), fg.end())));
  CHECK_THROWS_AS(winf_influence(f, g, PointCloud(2)), Error);
}

TEST_CASE("winf_influence on a constant offset") {
  // Translating a single-point cloud along the axis shifts dist on the far side by a constant.
  PointCloud a(1, {0.0}), b(1, {-0.5});
  WeightFunction fa(a, weight::PlainDistance{}), fb(b, weight::PlainDistance{});
  PointCloud eval(1, {1.0, 2.0, 3.0, 10.0});
  CHECK(winf_influence(fa, fb, eval) == doctest::Approx(0.5));
}

TEST_CASE("MoM birth influence never exceeds the plain one") {
  // Both influences are measured against the clean distance function d_n.
  std::mt19937_64 rng(56);
  std::uniform_real_distribution<double> loc(-0.1, 0.1);
  for (int trial = 0; trial < 60; ++trial) {
    auto clean = oracle::random_cloud(120, 2, rng);
    const std::size_t q = 11, m = 1 + trial % 5;
    const double x0[2] = {loc(rng), loc(rng)};
    PointCloud dirty = clean;
    for (std::size_t i = 0; i < m; ++i) dirty.push_back(x0);
    WeightFunction plain_clean(clean, weight::PlainDistance{});
    WeightFunction plain_dirty(dirty, weight::PlainDistance{});
    WeightFunction mom_dirty(dirty, weight::MomDist{q, static_cast<std::uint64_t>(trial), true});
    const double db = birth_influence(plain_clean, plain_dirty, x0);
    CHECK(db == doctest::Approx(plain_clean(x0)));
    CHECK(birth_influence(plain_clean, mom_dirty, x0) <= db);
  }
}
