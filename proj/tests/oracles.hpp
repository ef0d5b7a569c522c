#pragma once

// Brute-force reference checks for the tests. Deliberately naive: every
// point of a domain, every pair of markers. Only for small instances.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using P = std::vector<std::int64_t>;

inline std::int64_t cheb(const P& a, const P& b) {
  std::int64_t m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, a[i] > b[i] ? a[i] - b[i] : b[i] - a[i]);
  return m;
}

// Every lattice point of the box [lo, hi].
inline void for_each_point(const P& lo, const P& hi, const std::function<void(const P&)>& f) {
  const std::size_t n = lo.size();
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return;
  P x = lo;
  while (true) {
    f(x);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (x[k] < hi[k]) {
        ++x[k];
        goto next;
      }
      x[k] = lo[k];
    }
    return;
  next:;
  }
}

inline std::vector<P> box_points(const P& lo, const P& hi) {
  std::vector<P> out;
  for_each_point(lo, hi, [&](const P& x) { out.push_back(x); });
  return out;
}

// Smallest pairwise distance (INT64_MAX when fewer than two points).
inline std::int64_t min_pair_distance(const std::vector<P>& pts) {
  std::int64_t m = INT64_MAX;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) m = std::min(m, cheb(pts[a], pts[b]));
  return m;
}

inline std::int64_t box_distance(const P& alo, const P& ahi, const P& blo, const P& bhi) {
  std::int64_t best = INT64_MAX;
  for_each_point(alo, ahi, [&](const P& x) {
    for_each_point(blo, bhi, [&](const P& y) { best = std::min(best, cheb(x, y)); });
  });
  return best;
}

// True when every point of the box has some marker on its line x + t*g,
// t in Z, staying inside the box.
inline bool every_line_hit(const std::set<P>& M, const P& lo, const P& hi, const P& g) {
  bool ok = true;
  auto inside = [&](const P& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  };
  for_each_point(lo, hi, [&](const P& x) {
    if (!ok) return;
    for (int sgn : {1, -1}) {
      P y = x;
      while (inside(y)) {
        if (M.count(y)) return;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += sgn * g[i];
      }
    }
    ok = false;
  });
  return ok;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::int64_t uniform(std::mt19937_64& r, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(r);
}

}  // namespace oracle
