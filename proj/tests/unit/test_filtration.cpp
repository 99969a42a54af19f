#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "momdist/distance.hpp"
#include "momdist/weighted_rips.hpp"
#include "oracles.hpp"

using namespace momdist;

TEST_CASE("power parameter parsing") {
  CHECK(PowerParam::parse("1").value() == 1.0);
  CHECK(PowerParam::parse("2.5").value() == 2.5);
  CHECK(PowerParam::parse("inf").is_infinite());
  CHECK_THROWS_AS(PowerParam::parse("0.5"), Error);
  CHECK_THROWS_AS(PowerParam::parse("two"), Error);
  CHECK_THROWS_AS(PowerParam::finite(0.99), Error);
}

TEST_CASE("weighted radius") {
  const auto one = PowerParam::finite(1), two = PowerParam::finite(2);
  CHECK(weighted_radius(0.0, 2.0, one) == 2.0);
  CHECK(weighted_radius(1.0, 0.5, one) == -kInfinity);
  CHECK(weighted_radius(1.0, 0.5, two) == -kInfinity);
  CHECK(weighted_radius(1.0, 0.5, PowerParam::infinity()) == -kInfinity);
  CHECK(weighted_radius(3.0, 5.0, two) == doctest::Approx(4.0));
  CHECK(weighted_radius(3.0, 5.0, PowerParam::infinity()) == 5.0);
}

TEST_CASE("vertex time") {
  CHECK(vertex_time(0.0) == 0.0);
  CHECK(vertex_time(1.7) == 1.7);
}

TEST_CASE("edge time examples") {
  const auto one = PowerParam::finite(1);
  CHECK(edge_time(0.0, 0.0, 2.0, one) == 1.0);
  CHECK(edge_time(1.0, 0.0, 0.5, one) == 1.0);
  CHECK(std::abs(edge_time_bisect(1.0, 0.0, 0.5, one, 1e-12) - 1.0) <= 1e-9);
  const double t = edge_time(1.0, 1.0, 2.0, PowerParam::finite(2));
  CHECK(std::abs(t - std::sqrt(2.0)) <= 1e-9);
  CHECK(edge_time(0.2, 0.1, 1.0, PowerParam::infinity()) == 0.5);
  CHECK(edge_time(0.7, 0.1, 1.0, PowerParam::infinity()) == 0.7);
  CHECK_THROWS_AS(edge_time(0.0, 0.0, 1.0, PowerParam::finite(2), 0.0), Error);
  CHECK_THROWS_AS(edge_time_bisect(0.0, 0.0, 1.0, one, -1.0), Error);
}

TEST_CASE("closed-form edge times agree with bisection") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double wx = u(rng), wy = u(rng), d = u(rng);
    for (auto p : {PowerParam::finite(1), PowerParam::infinity()}) {
      const double closed = edge_time(wx, wy, d, p);
      const double bis = edge_time_bisect(wx, wy, d, p, 1e-11);
      REQUIRE(std::abs(closed - bis) <= 1e-9);
    }
  }
}

TEST_CASE("edge time is the first t where the balls touch") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double wx = u(rng), wy = u(rng), d = u(rng);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const auto pp = PowerParam::finite(p);
      const double t = edge_time(wx, wy, d, pp);
      CHECK(t >= std::max(wx, wy));
      CHECK(weighted_radius(wx, t + 1e-8, pp) + weighted_radius(wy, t + 1e-8, pp) >= d);
      if (t - 1e-8 >= std::max(wx, wy))
        CHECK(weighted_radius(wx, t - 1e-8, pp) + weighted_radius(wy, t - 1e-8, pp) < d);
    }
  }
}

TEST_CASE("equilateral triangle with zero weights") {
  auto c = PointCloud::from_rows({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}});
  std::vector<double> w(3, 0.0);
  auto k = build_weighted_rips(c, w, PowerParam::finite(1), 2, 1.0);
  REQUIRE(k.simplices.size() == 7);
  for (const auto& s : k.simplices) {
    if (s.dim() == 0) CHECK(s.value == 0.0);
    else CHECK(s.value == doctest::Approx(0.5));
  }
  CHECK(k.simplices.back().dim() == 2);
  CHECK_THROWS_WITH_AS(build_weighted_rips(c, w, PowerParam::finite(1), 3, 1.0), doctest::Contains("dimension cap"),
                       Error);
  CHECK_THROWS_AS(build_weighted_rips(c, w, PowerParam::finite(1), 2, 0.0), Error);
  CHECK_THROWS_AS(build_weighted_rips(c, std::vector<double>{0.0, 0.0}, PowerParam::finite(1)), Error);
  CHECK_THROWS_AS(build_weighted_rips(c, std::vector<double>{0.0, -1.0, 0.0}, PowerParam::finite(1)), Error);
}

TEST_CASE("t_max drops late simplices") {
  auto c = PointCloud::from_rows({{0.0}, {1.0}, {3.0}});
  std::vector<double> w(3, 0.0);
  auto k = build_weighted_rips(c, w, PowerParam::finite(1), 2, 0.75);
  // vertices plus the single edge at 0.5
  CHECK(k.simplices.size() == 4);
  auto full = build_weighted_rips(c, w, PowerParam::finite(1), 2);
  CHECK(full.simplices.size() == 7);
  CHECK(full.t_max == doctest::Approx(default_t_max(c, w)));
}

TEST_CASE("zero weights give identical complexes for p = 1 and p = inf") {
  std::mt19937_64 rng(23);
  auto c = oracle::random_cloud(12, 2, rng);
  std::vector<double> w(12, 0.0);
  auto a = build_weighted_rips(c, w, PowerParam::finite(1));
  auto b = build_weighted_rips(c, w, PowerParam::infinity());
  REQUIRE(a.simplices.size() == b.simplices.size());
  for (std::size_t i = 0; i < a.simplices.size(); ++i) {
    CHECK(a.simplices[i].vertices == b.simplices[i].vertices);
    CHECK(a.simplices[i].value == doctest::Approx(b.simplices[i].value));
  }
  for (const auto& s : a.simplices)
    if (s.dim() == 1)
      CHECK(s.value == doctest::Approx(euclidean_distance(c[s.vertices[0]], c[s.vertices[1]]) / 2.0));
}

TEST_CASE("filtration values dominate face values") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = oracle::random_cloud(5 + trial % 4, 2, rng);
    auto w = eval_weights(c, weight::MomDist{1 + static_cast<std::size_t>(trial) % 3, 1, true}, c);
    for (double p : {1.0, 2.0, kInfinity}) {
      auto pp = std::isinf(p) ? PowerParam::infinity() : PowerParam::finite(p);
      auto k = build_weighted_rips(c, w, pp);
      std::map<std::vector<Index>, double> value;
      for (const auto& s : k.simplices) value[s.vertices] = s.value;
      for (const auto& s : k.simplices) {
        if (s.dim() == 0) {
          CHECK(s.value == w[s.vertices[0]]);
          continue;
        }
        for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
          std::vector<Index> face;
          for (std::size_t a = 0; a < s.vertices.size(); ++a)
            if (a != drop) face.push_back(s.vertices[a]);
          REQUIRE(value.count(face) == 1);
          CHECK(value[face] <= s.value);
        }
      }
      for (std::size_t i = 1; i < k.simplices.size(); ++i) {
        const auto& x = k.simplices[i - 1];
        const auto& y = k.simplices[i];
        const std::size_t dx = x.dim(), dy = y.dim();
        CHECK(std::tie(x.value, dx, x.vertices) <= std::tie(y.value, dy, y.vertices));
      }
    }
  }
}

TEST_CASE("weight perturbation shifts times by at most the sup difference for p = 1") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = oracle::random_cloud(15, 2, rng);
    std::vector<double> f(15), g(15);
    double sup = 0.0;
    for (std::size_t i = 0; i < 15; ++i) {
      f[i] = u(rng);
      g[i] = std::max(0.0, f[i] + 0.2 * (u(rng) - 0.5));
      sup = std::max(sup, std::abs(f[i] - g[i]));
    }
    auto a = edge_time_matrix(c, f, PowerParam::finite(1), kInfinity);
    auto b = edge_time_matrix(c, g, PowerParam::finite(1), kInfinity);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= sup + 1e-12);
  }
}

TEST_CASE("enclosing time is where some vertex sees every edge") {
  auto c = PointCloud::from_rows({{0.0}, {1.0}, {4.0}});
  std::vector<double> w(3, 0.0);
  auto t = edge_time_matrix(c, w, PowerParam::finite(1), kInfinity);
  // vertex 1 reaches both others by t = 1.5
  CHECK(enclosing_time(t, 3) == doctest::Approx(1.5));
}

TEST_CASE("complex csv dump") {
  auto c = PointCloud::from_rows({{0.0}, {1.0}});
  std::vector<double> w{0.0, 0.25};
  auto k = build_weighted_rips(c, w, PowerParam::finite(1));
  std::stringstream ss;
  write_complex_csv(ss, k);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(ss, line)) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].rfind("0,0,", 0) == 0);
  CHECK(lines[2].rfind("1,0,1,", 0) == 0);
}
