#include "doctest.h"
#include "oracles.hpp"
#include "strongmark/lattice.hpp"
#include "strongmark/marker_set.hpp"

using namespace strongmark;

TEST_CASE("chebyshev basics") {
  CHECK(chebyshev(Point{0, 0}, Point{0, 0}) == 0);
  CHECK(chebyshev(Point{0, 0}, Point{3, -2}) == 3);
  CHECK_THROWS_AS(chebyshev(Point{0}, Point{0, 1}), Error);
}

TEST_CASE("rect distance matches brute force over point pairs") {
  Rect a({0, 0}, {2, 2}), b({5, 0}, {6, 2});
  CHECK(rect_distance(a, b) == 3);
  CHECK(oracle::box_distance(a.lo(), a.hi(), b.lo(), b.hi()) == 3);
  auto r = oracle::rng(7);
  for (int t = 0; t < 200; ++t) {
    std::vector<Coord> lo1(2), hi1(2), lo2(2), hi2(2);
    for (int j = 0; j < 2; ++j) {
      lo1[j] = oracle::uniform(r, -6, 6);
      hi1[j] = lo1[j] + oracle::uniform(r, 0, 3);
      lo2[j] = oracle::uniform(r, -6, 6);
      hi2[j] = lo2[j] + oracle::uniform(r, 0, 3);
    }
    Rect x(lo1, hi1), y(lo2, hi2);
    CHECK(rect_distance(x, y) == oracle::box_distance(lo1, hi1, lo2, hi2));
  }
}

TEST_CASE("metric axioms on random triples") {
  auto r = oracle::rng(11);
  for (int t = 0; t < 500; ++t) {
    Point x(3), y(3), z(3);
    for (int j = 0; j < 3; ++j) {
      x[j] = oracle::uniform(r, -50, 50);
      y[j] = oracle::uniform(r, -50, 50);
      z[j] = oracle::uniform(r, -50, 50);
    }
    CHECK(chebyshev(x, y) == chebyshev(y, x));
    CHECK(chebyshev(x, z) <= chebyshev(x, y) + chebyshev(y, z));
    CHECK((chebyshev(x, y) == 0) == (x == y));
  }
}

TEST_CASE("projections") {
  Rect r({0, 1}, {3, 5});
  CHECK(drop_axis(r, 1) == Rect({0}, {3}));
  CHECK(keep_axis(r, 0) == Interval{0, 3});
  Rect deg({0, 2, 1}, {0, 7, 1});
  CHECK(drop_axis(deg, 0) == Rect({2, 1}, {7, 1}));
  CHECK(drop_axis(r, 0).insert_axis(0, {0, 3}) == r);
}

TEST_CASE("canonical corners") {
  CHECK(corners_canonical(Rect({2}, {7})) == std::vector<Point>{{2}, {7}});
  CHECK(corners_canonical(Rect({0, 0}, {2, 3})) == std::vector<Point>{{0, 0}, {2, 0}, {0, 3}, {2, 3}});
  // k = 6 (1-based) is bit pattern 101.
  CHECK(corners_canonical(Rect::cube(3, 0, 1))[5] == Point{1, 0, 1});
  // the set of corners is exactly the set of extreme points
  Rect r({1, -2, 4}, {3, 5, 9});
  auto c = corners_canonical(r);
  std::set<Point> uniq(c.begin(), c.end());
  CHECK(uniq.size() == 8);
  for (const auto& p : c)
    for (int j = 0; j < 3; ++j) CHECK((p[j] == r.lo(j) || p[j] == r.hi(j)));
  for (int j = 0; j < 3; ++j) CHECK(c[0][j] == r.lo(j));
}

TEST_CASE("core and extension") {
  CHECK(core(Rect::cube(2, 0, 10), 2) == Rect::cube(2, 2, 8));
  Rect r({0, 3}, {4, 9});
  CHECK(core(r, 0) == r);
  CHECK(extension(Rect({3}, {7}), 3) == Rect({0}, {10}));
  CHECK_THROWS_AS(core(Rect({0}, {4}), 2), Error);
  CHECK(core(extension(r, 5), 5) == r);
}

TEST_CASE("core membership agrees with the distance-to-complement definition") {
  auto r = oracle::rng(3);
  for (int t = 0; t < 40; ++t) {
    Rect box({oracle::uniform(r, -3, 3), oracle::uniform(r, -3, 3)},
             {oracle::uniform(r, 8, 14), oracle::uniform(r, 8, 14)});
    const Coord delta = oracle::uniform(r, 1, 3);
    const Rect c = core(box, delta);
    oracle::for_each_point(box.lo(), box.hi(), [&](const oracle::P& x) {
      // distance to the nearest lattice point outside box
      Coord best = kInfinity;
      oracle::for_each_point({box.lo(0) - 1, box.lo(1) - 1}, {box.hi(0) + 1, box.hi(1) + 1}, [&](const oracle::P& y) {
        if (!box.contains(y)) best = std::min(best, oracle::cheb(x, y));
      });
      if (c.contains(x))
        CHECK(best >= delta + 1);
      else
        CHECK(best <= delta);
    });
  }
}

TEST_CASE("torus distance") {
  std::vector<Coord> L{10};
  CHECK(torus_rect_distance(Rect({0}, {1}), Rect({8}, {8}), L) == 2);
  CHECK(torus_rect_distance(Rect({0}, {1}), Rect({4}, {5}), L) == 3);
  CHECK(cyclic_gap({9, 12}, {1, 1}, 10) == 0);
}

TEST_CASE("marker set normalizes and searches") {
  MarkerSet m(2, 1);
  m.add(Point{3, 1});
  m.add(Point{0, 5});
  m.add(Point{3, 1});
  m.add(Point{0, 2});
  m.normalize();
  CHECK(m.size() == 3);
  CHECK(m.point(0) == Point{0, 2});
  CHECK(m.contains(Point{3, 1}));
  CHECK_FALSE(m.contains(Point{3, 2}));
  MarkerSet big(5, 1);
  big.add(Point{1, 1, 1, 1, 2});
  big.add(Point{1, 1, 1, 1, 1});
  big.add(Point{1, 1, 1, 1, 2});
  big.normalize();
  CHECK(big.size() == 2);
  CHECK(big.is_normalized());
}
