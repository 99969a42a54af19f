#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "momdist/radii.hpp"
#include "radii_table.hpp"

using namespace momdist;

TEST_CASE("lambert_w0 fixed points") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambert_w0(2.0 * std::exp(2.0)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_WITH_AS(lambert_w0(-1e-3), doctest::Contains("out of domain"), Error);
  CHECK_THROWS_AS(lambert_w0(std::nan("")), Error);
}

TEST_CASE("lambert_w0 residual on a log grid") {
  for (int k = -40; k <= 120; ++k) {
    const double z = std::pow(10.0, k / 10.0);
    const double w = lambert_w0(z);
    CHECK(std::abs(w * std::exp(w) - z) <= 1e-10 * std::max(1.0, z));
  }
}

TEST_CASE("lambert_w0_exp agrees with lambert_w0 and extends past the double range") {
  for (double lz : {-5.0, 0.0, 3.0, 50.0, 500.0, 700.0}) {
    CHECK(lambert_w0_exp(lz) == doctest::Approx(lambert_w0(std::exp(lz))).epsilon(1e-13));
  }
  const double big = 5000.0;
  const double w = lambert_w0_exp(big);
  CHECK(w + std::log(w) == doctest::Approx(big).epsilon(1e-14));
}

TEST_CASE("radius formulas match the frozen high-precision table") {
  const auto rows = oracle::load_radii_table(std::string(MOMDIST_TEST_DATA) + "/radii_oracle.csv");
  REQUIRE(rows.size() >= 100);
  for (const auto& r : rows) {
    INFO(r.kind << " n=" << r.n << " m=" << r.m << " q=" << r.q << " z=" << r.z);
    CHECK(oracle::relative_error(oracle::recompute(r), r.expected) <= 1e-9);
  }
}

TEST_CASE("radius_g examples") {
  const StandardCondition ab{1.0, 1.0};
  const double delta = std::exp(-2.0);
  CHECK(radius_g(1000, 1, 0, delta, ab) == doctest::Approx(std::log(1000.0) / 1000.0 + 8.0 / 1000.0).epsilon(1e-14));
  // Shrinking Q - 2m blows up the second term.
  double last = 0.0;
  for (double m = 0; m <= 10; ++m) {
    const double g = radius_g(1000, 21, m, 1e-3, ab);
    CHECK(g > last);
    last = g;
  }
  for (double b : {1.0, 2.0, 3.5}) {
    const double g1 = radius_g(5000, 11, 2, 1e-3, {1.0, b});
    const double g2 = radius_g(5000, 11, 2, 1e-3, {2.0, b});
    CHECK(g2 == doctest::Approx(g1 * std::pow(2.0, -1.0 / b)).epsilon(1e-13));
  }
}

TEST_CASE("radius_g errors and warnings") {
  const StandardCondition ab{1.0, 1.0};
  CHECK_THROWS_WITH_AS(radius_g(100, 4, 2, 1e-3, ab), doctest::Contains("pigeonhole violated"), Error);
  CHECK_THROWS_AS(radius_g(100, 100, 2, 1e-3, ab), Error);
  CHECK_THROWS_AS(radius_g(100, 11, 2, 1e-3, {0.0, 1.0}), Error);
  std::vector<std::string> warnings;
  CHECK(radius_g(100, 11, 2, 0.05, ab, {false, &warnings}) > 0.0);
  CHECK(warnings.size() == 1);
  CHECK_THROWS_AS(radius_g(100, 11, 2, 0.05, ab, {true, nullptr}), Error);
}

TEST_CASE("radius_f structure") {
  const StandardCondition ab{1.0, 1.0};
  // Q = 1, m = 0: first term is log(n) / (a n) + 4 log(1/d1) / (a n).
  const double n = 800, d1 = 0.01, d2 = 0.02;
  const double expect = (std::log(n) + 4.0 * std::log(1.0 / d1)) / n + (std::log(n) + 4.0 * std::log(1.0 / d2)) / n;
  CHECK(radius_f(n, 0, 1, d1, d2, ab) == doctest::Approx(expect).epsilon(1e-14));
  double last = 0.0;
  for (double m = 0; m <= 20; ++m) {
    const double f = radius_f(2000, m, 41, 1e-4, 0.01, ab);
    CHECK(f >= last);
    last = f;
  }
  CHECK_THROWS_AS(radius_f(n, 0, 1, 0.6, 0.6, ab), Error);
  CHECK_THROWS_WITH_AS(radius_f(n, 3, 5, 0.01, 0.01, ab), doctest::Contains("pigeonhole"), Error);
}

TEST_CASE("radius_h is monotone in m and homogeneous in a") {
  for (double b : {1.0, 2.0}) {
    double last = 0.0;
    for (double m = 0; m <= 200; ++m) {
      const double h = radius_h(500, m, 0.1, 200, {1.0, b});
      CHECK(h >= last);
      last = h;
    }
    const double h1 = radius_h(500, 50, 0.1, 200, {1.0, b});
    const double h2 = radius_h(500, 50, 0.1, 200, {2.0, b});
    CHECK(h2 == doctest::Approx(h1 * std::pow(2.0, -1.0 / b)).epsilon(1e-13));
  }
  CHECK_THROWS_WITH_AS(radius_h(500, 5, 0.1, 0, {1.0, 1.0}), doctest::Contains("delta too small for m_max"), Error);
}

TEST_CASE("radius_p reduces at m = 0 and grows with m") {
  const double n = 1000, delta = 0.05, a = 2.0, b = 1.0;
  const double expect = lambert_w0(n * std::pow(delta, -(1.0 + b))) / (a * n);
  CHECK(radius_p(n, 0, delta, {a, b}) == doctest::Approx(expect).epsilon(1e-13));
  double last = 0.0;
  for (double m = 0; m < 100; ++m) {
    const double p = radius_p(n, m, delta, {a, b});
    CHECK(p >= last);
    last = p;
  }
  CHECK_THROWS_AS(radius_p(n, 0, 1.5, {a, b}), Error);
}
