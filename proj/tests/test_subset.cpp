#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latdist/subset.hpp"
#include "oracles.hpp"

using namespace latdist;
using namespace latdist::lattice;
using namespace latdist::subset;

TEST_CASE("point set validation and canonical order") {
  LatticeSpec spec(4);
  PointSet ps(spec, {{3, 1}, {0, 0}, {1, 2}});
  CHECK(ps.points() == std::vector<Point>{{0, 0}, {1, 2}, {3, 1}});
  CHECK(ps.size() == 3);
  CHECK(ps.contains({1, 2}));
  CHECK_FALSE(ps.contains({2, 2}));
  CHECK_THROWS_AS(PointSet(spec, {{0, 0}, {0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet(spec, {{4, 0}}), std::out_of_range);
  CHECK_THROWS_AS(PointSet(spec, {{0, -1}}), std::out_of_range);
  CHECK(PointSet::full(spec).size() == 16);
}

TEST_CASE("generators") {
  CHECK(generate(LatticeSpec(5), ConfigKind::Corners).points() ==
        std::vector<Point>{{0, 0}, {0, 4}, {4, 0}, {4, 4}});
  CHECK(generate(LatticeSpec(5), ConfigKind::CornersCenter).contains({2, 2}));
  CHECK_THROWS_AS(generate(LatticeSpec(4), ConfigKind::CornersCenter), std::invalid_argument);
  CHECK_THROWS_AS(generate(LatticeSpec(6), ConfigKind::Stretched3x3), std::invalid_argument);

  auto s9 = generate(LatticeSpec(9), ConfigKind::Stretched3x3);
  CHECK(s9.size() == 9);
  CHECK(s9.contains({4, 8}));

  CHECK(generate(LatticeSpec(4), ConfigKind::Perimeter).size() == 12);
  CHECK(generate(LatticeSpec(6), ConfigKind::FilledPerimeter, 2).size() == 32);
  CHECK_THROWS_AS(generate(LatticeSpec(6), ConfigKind::FilledPerimeter, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate(LatticeSpec(6), ConfigKind::FilledPerimeter, 4), std::invalid_argument);

  auto cb5 = generate(LatticeSpec(5), ConfigKind::Checkerboard);
  CHECK(cb5.size() == 13);
  for (Point corner : {Point{0, 0}, Point{0, 4}, Point{4, 0}, Point{4, 4}}) {
    CHECK(cb5.contains(corner));
  }
}

TEST_CASE("generator cardinalities for all admissible sides") {
  for (int64_t n = 2; n <= 50; ++n) {
    LatticeSpec spec(n);
    CHECK(generate(spec, ConfigKind::Corners).size() == 4);
    CHECK(generate(spec, ConfigKind::Perimeter).size() == 4 * (n - 1));
    CHECK(generate(spec, ConfigKind::Checkerboard).size() == (n * n + 1) / 2);
    if (n % 2 == 1) {
      CHECK(generate(spec, ConfigKind::CornersCenter).size() == 5);
      CHECK(generate(spec, ConfigKind::Stretched3x3).size() == 9);
    }
    for (int64_t m = 1; m <= (n + 1) / 2; ++m) {
      auto got = generate(spec, ConfigKind::FilledPerimeter, m).size();
      CHECK(got == config_size(spec, ConfigKind::FilledPerimeter, m));
      if (m <= n / 2) {
        int64_t stated = 0;  // ring sum, valid while every ring is a hollow square
        for (int64_t i = 1; i <= m; ++i) stated += 4 * (n - (2 * i - 1));
        CHECK(got == stated);
      } else {
        CHECK(got == n * n);  // odd n at maximum depth: the center ring is one point
      }
    }
  }
}

TEST_CASE("subset class frequency") {
  for (int64_t n : {4, 5, 9, 12}) {
    LatticeSpec spec(n);
    auto corners = generate(spec, ConfigKind::Corners);
    CHECK(class_frequency(corners, {n - 1, 0}) == 4);
    CHECK(class_frequency(corners, {n - 1, n - 1}) == 2);
    CHECK(class_frequency(corners, {1, 0}) == 0);
  }
  PointSet empty(LatticeSpec(5), {});
  CHECK(class_frequency(empty, {1, 0}) == 0);
  CHECK_THROWS_AS(class_frequency(empty, {5, 0}), std::out_of_range);
}

TEST_CASE("class frequencies sum to C(p, 2)") {
  std::mt19937_64 rng(99);
  for (int64_t n : {3, 6, 10}) {
    LatticeSpec spec(n);
    for (int rep = 0; rep < 20; ++rep) {
      int64_t p = static_cast<int64_t>(rng() % static_cast<uint64_t>(
                      std::min<int64_t>(60, spec.point_count()))) + 1;
      PointSet ps(spec, oracles::sample_points(spec, p, rng));
      int64_t sum = 0;
      for_each_class(spec, [&](PairClass cls) { sum += class_frequency(ps, cls); });
      CHECK(sum == pairs_of(p));
    }
  }
}

TEST_CASE("subset distribution") {
  auto corners5 = generate(LatticeSpec(5), ConfigKind::Corners);
  auto dist = distribution(corners5);
  CHECK(dist.entries() == std::vector<std::pair<int64_t, int64_t>>{{16, 4}, {32, 2}});
  CHECK(dist.total() == 6);

  PointSet single(LatticeSpec(5), {{2, 2}});
  CHECK(distribution(single).total() == 0);
  CHECK(distribution(single).entries().empty());

  for (int64_t n = 2; n <= 12; ++n) {
    LatticeSpec spec(n);
    CHECK(distribution(PointSet::full(spec)) == full_distribution(spec));
  }
  CHECK_THROWS_AS(distribution(PointSet::full(LatticeSpec(10)), 50), std::length_error);
}

TEST_CASE("subset distribution matches pair enumeration on random subsets") {
  std::mt19937_64 rng(4242);
  for (int64_t n : {4, 7, 11}) {
    LatticeSpec spec(n);
    for (int rep = 0; rep < 10; ++rep) {
      int64_t p = 2 + static_cast<int64_t>(rng() % 20);
      p = std::min(p, spec.point_count());
      auto pts = oracles::sample_points(spec, p, rng);
      CHECK(distribution(PointSet(spec, pts)) == oracles::brute_subset_distribution(pts));
    }
  }
}

TEST_CASE("checkerboard closed forms match brute force") {
  for (int64_t n = 3; n <= 14; ++n) {
    LatticeSpec spec(n);
    auto cb = generate(spec, ConfigKind::Checkerboard);
    for (int64_t a = 2; a <= n - 1; a += 2) {
      CHECK(checkerboard_axis_count(spec, a) ==
            oracles::brute_class_count(cb.points(), a, 0));
    }
    for (int64_t a = 1; a <= n - 1; ++a) {
      CHECK(checkerboard_diag_count(spec, a) ==
            oracles::brute_class_count(cb.points(), a, a));
    }
  }
}

TEST_CASE("checkerboard count examples and validation") {
  CHECK(checkerboard_axis_count(LatticeSpec(3), 2) == 4);
  CHECK(checkerboard_axis_count(LatticeSpec(4), 2) == 8);
  CHECK(checkerboard_axis_count(LatticeSpec(5), 4) == 6);
  CHECK_THROWS_AS(checkerboard_axis_count(LatticeSpec(5), 3), std::invalid_argument);
  CHECK_THROWS_AS(checkerboard_axis_count(LatticeSpec(5), 6), std::out_of_range);

  CHECK(checkerboard_diag_count(LatticeSpec(3), 2) == 2);
  CHECK(checkerboard_diag_count(LatticeSpec(5), 1) == 16);
  CHECK(checkerboard_diag_count(LatticeSpec(4), 3) == 1);
  CHECK_THROWS_AS(checkerboard_diag_count(LatticeSpec(4), 4), std::out_of_range);
}

TEST_CASE("checkerboard carries no mixed-parity displacement") {
  for (int64_t n = 3; n <= 12; ++n) {
    LatticeSpec spec(n);
    auto cb = generate(spec, ConfigKind::Checkerboard);
    for_each_class(spec, [&](PairClass cls) {
      if ((cls.a + cls.b) % 2 != 0) CHECK(class_frequency(cb, cls) == 0);
    });
  }
}
