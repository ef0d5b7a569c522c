#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "strongmark/verify.hpp"

using namespace strongmark;

namespace {

MarkerSet make(int n, Coord d, const std::vector<Point>& pts) {
  MarkerSet M(n, d);
  for (const auto& p : pts) M.add(p);
  M.normalize();
  return M;
}

std::vector<Point> random_points(std::mt19937_64& rng, int n, std::size_t count, Coord lo, Coord hi) {
  std::set<Point> s;
  Coord room = 1;
  for (int j = 0; j < n; ++j) room *= hi - lo + 1;
  count = std::min<std::size_t>(count, static_cast<std::size_t>(room));
  while (s.size() < count) {
    Point p(n);
    for (auto& c : p) c = oracle::uniform(rng, lo, hi);
    s.insert(p);
  }
  return {s.begin(), s.end()};
}

std::int64_t torus_dist(const Point& a, const Point& b, const std::vector<Coord>& L) {
  std::int64_t m = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    std::int64_t t = ((a[j] - b[j]) % L[j] + L[j]) % L[j];
    m = std::max(m, std::min(t, L[j] - t));
  }
  return m;
}

// Least a >= 0 with x + a g in the set, walking at most `cap` steps.
Coord walk(const std::set<Point>& S, Point x, const Point& g, int sgn, Coord cap, const std::vector<Coord>* L) {
  for (Coord a = 0; a <= cap; ++a) {
    Point y = x;
    if (L)
      for (std::size_t j = 0; j < y.size(); ++j) y[j] = ((y[j] % (*L)[j]) + (*L)[j]) % (*L)[j];
    if (S.count(y)) return a;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += sgn * g[j];
  }
  return kInfinity;
}

}  // namespace

TEST_CASE("spacing examples") {
  auto single = check_spacing(make(2, 1, {{3, 4}}), 5);
  CHECK(single.pass);
  CHECK(single.worst == kInfinity);

  auto close = check_spacing(make(2, 3, {{0, 0}, {0, 2}}), 3);
  CHECK(!close.pass);
  CHECK(close.worst == 2);
  CHECK(close.witness == std::vector<Point>{{0, 0}, {0, 2}});

  auto lemma = check_spacing(make(2, 2, {{0, 0}, {4, 1}, {0, 2}, {4, 3}, {0, 4}}), 2);
  CHECK(lemma.pass);
  CHECK(lemma.worst == 2);
}

TEST_CASE("spacing agrees with all pairs, flat and toroidal") {
  auto rng = oracle::rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const Coord d = oracle::uniform(rng, 1, 5);
    const std::vector<Coord> L(n, oracle::uniform(rng, 4, 14));
    const auto pts = random_points(rng, n, static_cast<std::size_t>(oracle::uniform(rng, 2, 12)), 0, L[0] - 1);
    const auto M = make(n, d, pts);

    const auto flat = check_spacing(M, d);
    const std::int64_t truth = oracle::min_pair_distance(pts);
    CHECK(flat.pass == (truth >= d));
    if (truth < d) CHECK(flat.worst == truth);

    std::int64_t tmin = INT64_MAX;
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) tmin = std::min(tmin, torus_dist(pts[a], pts[b], L));
    const auto tor = check_spacing(M, d, World::torus(L));
    CHECK(tor.pass == (tmin >= d));
    if (tmin < d) CHECK(tor.worst == tmin);
  }
}

TEST_CASE("axis hitting agrees with walking every cell") {
  auto rng = oracle::rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 3;
    const std::vector<Coord> L(n, oracle::uniform(rng, 3, 9));
    const auto pts = random_points(rng, n, static_cast<std::size_t>(oracle::uniform(rng, 1, 20)), 0, L[0] - 1);
    const std::set<Point> S(pts.begin(), pts.end());
    const auto M = make(n, 1, pts);
    const World tor = World::torus(L);
    Rect box = tor.box();
    for (int axis = 0; axis < n; ++axis) {
      Point e(n, 0);
      e[axis] = 1;
      const Coord bound = oracle::uniform(rng, 0, L[0]);
      bool ok_t = true, ok_r = true, ok_line = true;
      Coord worst_t = 0;
      oracle::for_each_point(box.lo(), box.hi(), [&](const oracle::P& x) {
        const Coord f = walk(S, x, e, 1, 3 * L[0], &L), b = walk(S, x, e, -1, 3 * L[0], &L);
        worst_t = std::max({worst_t, f, b});
        ok_t = ok_t && f <= bound && b <= bound;
        const Coord fr = walk(S, x, e, 1, bound, nullptr), br = walk(S, x, e, -1, bound, nullptr);
        ok_r = ok_r && fr <= bound && br <= bound;
        // some marker on the line inside the box
        Point y = x;
        bool any = false;
        for (y[axis] = 0; y[axis] < L[axis]; ++y[axis]) any = any || S.count(y);
        ok_line = ok_line && any;
      });
      const auto rt = check_axis_hitting(M, tor, axis, bound);
      CHECK(rt.pass == ok_t);
      if (ok_t) CHECK(std::max(rt.worst, rt.worst_b) == worst_t);
      CHECK(check_axis_hitting(M, box, axis, bound).pass == ok_r);
      CHECK(check_axis_hitting(M, box, axis).pass == ok_line);
    }
  }
}

TEST_CASE("empty marker set fails every line") {
  const MarkerSet M(2, 1);
  auto r = check_axis_hitting(M, Rect({0, 0}, {3, 4}), 0);
  CHECK(!r.pass);
  CHECK(r.violations == 5);
  CHECK(!check_axis_hitting(M, World::torus({4, 4}), 1, 10).pass);
}

TEST_CASE("general hitting: progression example and brute force") {
  const auto M = make(1, 2, {{0}, {4}, {8}});
  CHECK(check_general_hitting(M, Rect({0}, {13}), Point{3}).pass);
  CHECK(check_general_hitting(M, Rect({0}, {14}), Point{3}).pass);
  CHECK(!check_general_hitting(make(1, 2, {{0}, {4}}), Rect({0}, {13}), Point{3}).pass);

  auto rng = oracle::rng(9);
  const std::vector<Point> steps2{{1, 1}, {1, -1}, {2, 1}, {0, 3}, {-2, 0}, {3, 2}};
  for (int trial = 0; trial < 60; ++trial) {
    const std::vector<Coord> L{oracle::uniform(rng, 2, 9), oracle::uniform(rng, 2, 9)};
    const Point g = steps2[static_cast<std::size_t>(trial) % steps2.size()];
    const auto pts = random_points(rng, 2, static_cast<std::size_t>(oracle::uniform(rng, 1, 25)), 0, 8);
    std::set<Point> S;
    for (auto p : pts) S.insert({p[0] % L[0], p[1] % L[1]});
    MarkerSet M(2, 1);
    for (const auto& p : S) M.add(p);
    M.normalize();
    const Coord bound = oracle::uniform(rng, 0, 20);
    bool ok = true;
    Coord worst = 0;
    oracle::for_each_point({0, 0}, {L[0] - 1, L[1] - 1}, [&](const oracle::P& x) {
      const Coord f = walk(S, x, g, 1, 200, &L), b = walk(S, x, g, -1, 200, &L);
      worst = std::max({worst, f, b});
      ok = ok && f <= bound && b <= bound;
    });
    const auto r = check_general_hitting(M, World::torus(L), g, bound);
    CHECK(r.pass == ok);
    if (ok) CHECK(std::max(r.worst, r.worst_b) == worst);

    // rectangle reading with markers anywhere
    const Rect box({1, 0}, {6, 5});
    bool ok_r = true;
    oracle::for_each_point(box.lo(), box.hi(), [&](const oracle::P& x) {
      ok_r = ok_r && walk(S, x, g, 1, bound, nullptr) <= bound && walk(S, x, g, -1, bound, nullptr) <= bound;
    });
    CHECK(check_general_hitting(M, box, g, bound).pass == ok_r);
  }
}

TEST_CASE("colouring checker") {
  const World w = World::torus({6});
  EdgeColoring c;
  c.world = w;
  c.gens = {{1}};
  c.color = {1, 2, 1, 2, 1, 2};
  auto good = check_coloring(c, 3);
  CHECK(good.pass);
  CHECK(good.worst == 2);
  c.color[3] = 1;
  auto bad = check_coloring(c, 3);
  CHECK(!bad.pass);
  CHECK(bad.violations == 2);
  c.color.assign(6, 1);
  CHECK(check_coloring(c, 3).violations == 6);

  EdgeColoring tiny;
  tiny.world = World::torus({2});
  tiny.gens = {{1}};
  tiny.color = {1, 2};
  CHECK(!check_coloring(tiny, 3).pass);
}

TEST_CASE("brute-force marker search") {
  auto one = brute_min_marker(Rect({0}, {5}), 3, {{1}});
  REQUIRE(one.size);
  CHECK(*one.size == 1);

  auto feas = brute_min_marker(Rect({0, 0}, {5, 3}), 2, {{1, 0}});
  REQUIRE(feas.size);
  CHECK(*feas.size == 4);
  const auto W = make(2, 2, feas.witness);
  CHECK(check_spacing(W, 2).pass);
  CHECK(check_axis_hitting(W, Rect({0, 0}, {5, 3}), 0).pass);

  auto none = brute_min_marker(Rect({0, 0}, {1, 0}), 5, {{0, 1}});
  CHECK(!none.size);
  CHECK_THROWS_AS(brute_min_marker(Rect({0, 0}, {9, 9}), 1, {{1, 0}, {0, 1}}, 3), Error);
}

TEST_CASE("locality on identical and differing worlds") {
  const World w = World::window({32, 32});
  const Tiling a = build_tiling(w, 4, TilingStyle::Grid, 1);
  auto builder = [](const Tiling& t) {
    MarkerSet M(2, 1);
    for (const auto& r : t.regions()) M.add(r.lo());
    M.normalize();
    return M;
  };
  CHECK(check_locality(builder, a, a, {12, 12}, 5).pass);
  const Tiling b = build_tiling(w, 4, TilingStyle::Brick, 2);
  CHECK(!tilings_agree_near(a, b, {12, 12}, 20));
}
