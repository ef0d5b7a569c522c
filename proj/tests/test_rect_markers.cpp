#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "strongmark/rect_markers.hpp"

using namespace strongmark;

namespace {

std::vector<oracle::P> points_of(const MarkerSet& m) {
  std::vector<oracle::P> out;
  for (std::size_t k = 0; k < m.size(); ++k) out.push_back(m.point(k));
  return out;
}

// Recurrence evaluated independently of the library.
struct Ref {
  std::vector<long long> d, N;
  long long D0;
};

Ref reference(int n, long long d0, bool paper) {
  Ref r;
  r.d.assign(n + 1, 0);
  r.N.assign(n + 1, 0);
  long long pw = 1;
  for (int k = 0; k < n; ++k) pw *= d0;
  r.d[n] = paper ? 6 * n * pw : 2 * pw - d0 + 1;
  for (int i = n - 1; i >= 1; --i) r.d[i] = paper ? 6 * n * r.d[i + 1] : 5 * (n - i) * r.d[i + 1] + 1;
  long long four = 1;
  for (int k = 0; k < n - 1; ++k) four *= 4;
  r.N[1] = four;
  for (int i = 1; i < n; ++i) {
    long long p = 1;
    for (int k = 0; k < n - 1; ++k) p *= 2 * r.N[i] + 1;
    r.N[i + 1] = four * p + 2 * r.N[i] + 1;
  }
  r.D0 = 4 * r.N[n] * r.d[1];
  return r;
}

bool lines_hit(const MarkerSet& m, const Rect& r, int axis) {
  std::set<Point> keys;
  for (std::size_t k = 0; k < m.size(); ++k) keys.insert(drop_axis(m[k], axis));
  bool ok = true;
  const Rect base = drop_axis(r, axis);
  oracle::for_each_point(base.lo(), base.hi(), [&](const oracle::P& x) {
    if (!keys.count(x)) ok = false;
  });
  return ok;
}

}  // namespace

TEST_CASE("paper schedule values") {
  auto s = paper_rect_schedule(2, 1);
  CHECK(s.d == std::vector<Coord>{1, 144, 12});
  CHECK(s.N == std::vector<Coord>{0, 4, 45});
  CHECK(s.D0 == 25920);
  auto s1 = paper_rect_schedule(1, 1);
  CHECK(s1.d[1] == 6);
  CHECK(s1.N[1] == 1);
  CHECK(s1.D0 == 24);
  for (int n = 1; n <= 3; ++n)
    for (Coord d0 = 1; d0 <= 3; ++d0) {
      auto p = paper_rect_schedule(n, d0);
      auto ref = reference(n, d0, true);
      CHECK(p.D0 == ref.D0);
      Coord expect = 1;
      for (int k = 0; k < n; ++k) expect *= 6 * n * d0;
      CHECK(p.d[1] == expect);
      CHECK(rect_schedule_violations(p).empty());
    }
}

TEST_CASE("minimal schedule values") {
  auto s = minimal_rect_schedule(2, 1);
  CHECK(s.d[2] == 2);
  CHECK(s.d[1] == 11);
  CHECK(s.D0 == 1980);
  auto t = minimal_rect_schedule(1, 3);
  CHECK(t.d[1] == 4);
  CHECK(t.D0 == 16);
  auto u = minimal_rect_schedule(2, 2);
  CHECK(u.d[2] == 7);
  CHECK(u.d[1] == 36);
  CHECK(u.D0 == 6480);
  for (int n = 1; n <= 3; ++n)
    for (Coord d0 = 1; d0 <= 4; ++d0) {
      auto m = minimal_rect_schedule(n, d0);
      auto ref = reference(n, d0, false);
      CHECK(m.D0 == ref.D0);
      CHECK(rect_schedule_violations(m).empty());
      // one less anywhere breaks an inequality
      for (int i = 1; i <= n; ++i) {
        auto bad = m;
        bad.d[i] -= 1;
        bad.D0 = 4 * bad.N[n] * bad.d[1];
        CHECK_FALSE(rect_schedule_violations(bad).empty());
      }
    }
}

TEST_CASE("axis marker worked example") {
  auto m = axis_marker(Rect({0, 0}, {6, 4}), 0, 2);
  CHECK(points_of(m) == std::vector<oracle::P>{{0, 0}, {0, 2}, {0, 4}, {4, 1}, {4, 3}});
  auto single = axis_marker(Rect({0}, {9}), 0, 3);
  CHECK(points_of(single) == std::vector<oracle::P>{{0}});
  CHECK_THROWS_AS(axis_marker(Rect({0, 0}, {5, 4}), 0, 2), Error);
}

TEST_CASE("axis marker spacing, hitting and one point per line") {
  auto r = oracle::rng(19);
  for (int n = 1; n <= 3; ++n)
    for (Coord d = 1; d <= 3; ++d)
      for (int axis = 0; axis < n; ++axis)
        for (int t = 0; t < 6; ++t) {
          std::vector<Coord> lo(n), hi(n);
          const Coord need = axis_marker_min_side(n, d);
          for (int j = 0; j < n; ++j) {
            lo[j] = oracle::uniform(r, -5, 5);
            hi[j] = lo[j] + (j == axis ? need + oracle::uniform(r, 0, 4) : oracle::uniform(r, 0, 6));
          }
          Rect box(lo, hi);
          auto m = axis_marker(box, axis, d);
          auto pts = points_of(m);
          CHECK(oracle::min_pair_distance(pts) >= d);
          CHECK(m.size() == static_cast<std::size_t>(drop_axis(box, axis).cell_count()));
          std::set<oracle::P> M(pts.begin(), pts.end());
          oracle::P g(n, 0);
          g[axis] = 1;
          CHECK(oracle::every_line_hit(M, lo, hi, g));
          for (const auto& p : pts) CHECK(box.contains(p));
        }
}

TEST_CASE("space intervals worked examples") {
  CHECK(space_intervals({0, 30}, {{7, 9}}, 2, 2) == std::vector<Interval>{{2, 4}, {14, 16}});
  CHECK(space_intervals({0, 6}, {}, 1, 1) == std::vector<Interval>{{1, 2}});
  CHECK_THROWS_AS(space_intervals({0, 29}, {{7, 9}}, 2, 2), Error);
}

TEST_CASE("space intervals never fail when the length precondition holds") {
  auto r = oracle::rng(23);
  for (Coord d = 1; d <= 4; ++d)
    for (std::size_t m = 0; m <= 3; ++m)
      for (std::size_t k = 1; k <= 5; ++k)
        for (int t = 0; t < 5; ++t) {
          const Coord len = 3 * d * (2 * Coord(m) + Coord(k) + 1) + oracle::uniform(r, 0, 3 * d);
          Interval I{oracle::uniform(r, -20, 20), 0};
          I.hi = I.lo + len;
          std::vector<Interval> J;
          for (std::size_t j = 0; j < m; ++j) {
            Coord lo = oracle::uniform(r, I.lo, I.hi);
            J.push_back({lo, std::min(I.hi, lo + oracle::uniform(r, 0, d))});
          }
          auto K = space_intervals(I, J, d, k);
          REQUIRE(K.size() == k);
          for (std::size_t a = 0; a < k; ++a) {
            CHECK(K[a].length() >= d);
            CHECK(I.lo <= K[a].lo);
            CHECK(K[a].hi <= I.hi);
            for (std::size_t b = a + 1; b < k; ++b)
              CHECK(oracle::box_distance({K[a].lo}, {K[a].hi}, {K[b].lo}, {K[b].hi}) >= d);
            for (const auto& j : J) CHECK(oracle::box_distance({K[a].lo}, {K[a].hi}, {j.lo}, {j.hi}) >= d);
          }
        }
}

TEST_CASE("package in direction") {
  auto Q = package_in_direction(Rect({0, 0}, {4, 30}), 1, {Rect({3}, {4}), Rect({0}, {1})}, {}, 2);
  REQUIRE(Q.size() == 2);
  auto K = space_intervals({0, 30}, {}, 2, 2);
  CHECK(Q[0] == Rect({0, K[0].lo}, {1, K[0].hi}));
  CHECK(Q[1] == Rect({3, K[1].lo}, {4, K[1].hi}));
  CHECK(package_in_direction(Rect({0, 0}, {4, 30}), 1, {}, {}, 2).empty());
}

TEST_CASE("rect minus rects") {
  CHECK(rect_minus_rects(Rect({0}, {9}), {Rect({3}, {5})}) == std::vector<Rect>{Rect({0}, {2}), Rect({6}, {9})});
  auto pieces = rect_minus_rects(Rect::cube(2, 0, 9), {Rect({3, 2}, {5, 6})});
  CHECK(pieces.size() == 8);
  CHECK(rect_minus_rects(Rect::cube(2, 0, 9), {Rect::cube(2, 0, 9)}).empty());
}

TEST_CASE("rect minus rects equals the set difference cell by cell") {
  auto r = oracle::rng(31);
  for (int n = 1; n <= 3; ++n)
    for (int L = 1; L <= 3; ++L)
      for (int t = 0; t < 10; ++t) {
        Rect box = Rect::cube(n, 0, 7);
        std::vector<Rect> S;
        for (int l = 0; l < L; ++l) {
          std::vector<Coord> lo(n), hi(n);
          for (int j = 0; j < n; ++j) {
            lo[j] = oracle::uniform(r, 0, 7);
            hi[j] = oracle::uniform(r, lo[j], 7);
          }
          S.emplace_back(lo, hi);
        }
        auto pieces = rect_minus_rects(box, S);
        Coord bound = 1;
        for (int j = 0; j < n; ++j) bound *= 2 * L + 1;
        CHECK(static_cast<Coord>(pieces.size()) <= bound);
        std::map<oracle::P, int> hits;
        for (const auto& p : pieces) oracle::for_each_point(p.lo(), p.hi(), [&](const oracle::P& x) { hits[x]++; });
        oracle::for_each_point(box.lo(), box.hi(), [&](const oracle::P& x) {
          bool in_s = false;
          for (const auto& s : S) in_s = in_s || s.contains(x);
          CHECK(hits[x] == (in_s ? 0 : 1));
        });
      }
}

TEST_CASE("strong rectangle markers, n = 2, minimal schedule d0 = 1") {
  auto sched = minimal_rect_schedule(2, 1);
  Rect box = Rect::cube(2, 0, sched.D0);
  auto res = strong_rect_markers(box, sched);
  auto pts = points_of(res.markers);
  CHECK(oracle::min_pair_distance(pts) >= 1);
  CHECK(lines_hit(res.markers, box, 0));
  CHECK(lines_hit(res.markers, box, 1));
  for (const auto& round : res.family.rounds)
    for (const auto& t : round.tubes) CHECK(rect_distance(t.special, t.source) >= round.d);
  std::vector<Coord> half{box.side(0) / 2, box.side(1) / 2};
  CHECK(family_violations(res.family, sched.d, sched.N, sched.thickness, half).empty());
  CHECK_THROWS_AS(strong_rect_markers(Rect::cube(2, 0, sched.D0 - 1), sched), Error);
}

TEST_CASE("strong rectangle markers, n = 2, d0 = 2, non-square and deterministic") {
  auto sched = minimal_rect_schedule(2, 2);
  Rect box({5, -3}, {5 + sched.D0 + 17, -3 + sched.D0});
  auto a = strong_rect_markers(box, sched);
  auto b = strong_rect_markers(box, sched);
  CHECK(a.markers == b.markers);
  // all-pairs spacing restricted to near neighbours: sort by first coordinate
  auto pts = points_of(a.markers);
  Coord best = kInfinity;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size() && pts[j][0] - pts[i][0] < 2; ++j)
      best = std::min(best, oracle::cheb(pts[i], pts[j]));
  CHECK(best >= 2);
  CHECK(lines_hit(a.markers, box, 0));
  CHECK(lines_hit(a.markers, box, 1));
}

TEST_CASE("strong rectangle markers, n = 1 is one package") {
  auto sched = minimal_rect_schedule(1, 3);
  auto res = strong_rect_markers(Rect({0}, {sched.D0}), sched);
  CHECK(res.markers.size() == 1);
  CHECK(res.family.rounds.size() == 1);
}

TEST_CASE("family checker flags a broken family") {
  auto sched = minimal_rect_schedule(2, 1);
  Rect box = Rect::cube(2, 0, sched.D0);
  auto res = strong_rect_markers(box, sched);
  std::vector<Coord> half{box.side(0) / 2, box.side(1) / 2};
  auto broken = res.family;
  broken.rounds[1].packages.push_back(broken.rounds[1].packages.front());
  CHECK_FALSE(family_violations(broken, sched.d, sched.N, sched.thickness, half).empty());
  auto gap = res.family;
  gap.rounds[0].packages.pop_back();
  CHECK_FALSE(family_violations(gap, sched.d, sched.N, sched.thickness, half).empty());
}
