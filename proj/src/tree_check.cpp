// Tree-section checker. Ladders are recomputed from the bracket anchors with
// its own column index; nothing is taken from the builder except the
// stored k and parent, which are compared against.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "strongmark/applications.hpp"

namespace strongmark {

namespace {

struct Columns {
  const MarkerSet* S = nullptr;
  std::vector<std::size_t> idx;  // sorted by (coords except axis 1, axis 1)

  bool less(std::span<const Coord> p, std::span<const Coord> q) const {
    for (std::size_t k = 0; k < p.size(); ++k)
      if (k != 1 && p[k] != q[k]) return p[k] < q[k];
    return p[1] < q[1];
  }
  bool same_column(std::span<const Coord> p, std::span<const Coord> q) const {
    for (std::size_t k = 0; k < p.size(); ++k)
      if (k != 1 && p[k] != q[k]) return false;
    return true;
  }

  explicit Columns(const MarkerSet& s) : S(&s), idx(s.size()) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return less(s[a], s[b]); });
  }

  /// Anchors in the column of p with height >= p[1], in height order.
  template <class F>
  void scan_from(const Point& p, F&& visit) const {
    auto it = std::lower_bound(idx.begin(), idx.end(), p,
                               [&](std::size_t q, const Point& v) { return less((*S)[q], v); });
    for (; it != idx.end() && same_column((*S)[*it], p); ++it)
      if (!visit(*it, (*S)[*it][1])) break;
  }

  /// The point just below p in its column, if any.
  std::optional<std::size_t> below(const Point& p) const {
    auto it = std::lower_bound(idx.begin(), idx.end(), p,
                               [&](std::size_t q, const Point& v) { return less((*S)[q], v); });
    if (it == idx.begin() || !same_column((*S)[*(it - 1)], p)) return std::nullopt;
    return *(it - 1);
  }
};

}  // namespace

TreeReport verify_tree(const TreeSection& t, bool degrees) {
  TreeReport out;
  Report& r = out.report;
  r.check = "tree";
  const World& w = t.world;
  const MarkerSet& M = t.markers;
  if (w.is_torus() || w.n < 2) {
    r.fail({}, "tree sections are checked in window mode with n >= 2");
    return out;
  }
  const std::optional<Rect> core = w.checked_box();
  auto in_core = [&](const Point& p) { return core && core->contains(p); };

  const Columns anchors(t.brackets);
  const Columns marks(M);
  const std::size_t count = M.size();

  // Lowest bracket cell strictly above x in x's column, brackets anchored at x excluded.
  auto ladder_end = [&](const Point& x) {
    Coord end = kInfinity;
    Point col = x;
    anchors.scan_from(col, [&](std::size_t, Coord h) {
      if (h - 1 > end) return false;
      if (h != x[1])
        for (Coord c : {h - 1, h + 1})
          if (c > x[1]) end = std::min(end, c);
      return true;
    });
    col[0] += 1;
    anchors.scan_from(col, [&](std::size_t, Coord h) {
      if (h - 1 > end) return false;
      for (Coord c : {h - 1, h, h + 1})
        if (c > x[1]) end = std::min(end, c);
      return true;
    });
    return end;
  };
  auto marker_index = [&](std::span<const Coord> y) -> std::int64_t {
    std::size_t lo = 0, hi = count;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (std::lexicographical_compare(M[mid].begin(), M[mid].end(), y.begin(), y.end())) lo = mid + 1;
      else hi = mid;
    }
    return lo < count && std::equal(y.begin(), y.end(), M[lo].begin()) ? static_cast<std::int64_t>(lo) : -1;
  };

  std::vector<std::int64_t> parent(count, -1);
  std::vector<char> interior(count, 0);
  std::vector<std::size_t> owners;
  for (std::size_t i = 0; i < count; ++i) {
    const Point x = M.point(i);
    const Coord end = ladder_end(x);
    bool inside = end != kInfinity && in_core(x);
    for (const auto& o : kBracket) {
      Point cell = x;
      cell[0] += o[0];
      cell[1] += o[1];
      inside = inside && in_core(cell);
    }
    if (inside) {
      Point top = x;
      top[1] = end;
      inside = in_core(top);
    }
    if (!inside) {
      ++out.truncated;
      continue;
    }
    interior[i] = 1;
    ++out.interior;

    owners.clear();
    Point col = x;
    col[1] = end - 1;
    anchors.scan_from(col, [&](std::size_t q, Coord h) {
      if (h > end + 1) return false;
      if ((h == end - 1 || h == end + 1) && h != x[1]) owners.push_back(q);
      return true;
    });
    col[0] += 1;
    anchors.scan_from(col, [&](std::size_t q, Coord h) {
      if (h > end + 1) return false;
      owners.push_back(q);
      return true;
    });
    if (owners.size() != 1) {
      ++out.multi_parent;
      std::vector<Point> wit{x};
      for (auto q : owners) wit.push_back(t.brackets.point(q));
      r.fail(wit, "ladder of " + to_string(x) + " ends in " + std::to_string(owners.size()) + " brackets");
      continue;
    }
    ++out.unique_parent;
    parent[i] = marker_index(t.brackets[owners[0]]);
    if (i < t.k.size() && (t.k[i] != end - x[1] || t.parent[i] != parent[i]))
      r.fail({x}, "stored ladder of " + to_string(x) + " disagrees with the recomputed one");
  }

  // cycles among interior markers: parents are followed until they leave the interior set
  std::vector<char> state(count, 0);  // 0 new, 1 on stack, 2 done
  for (std::size_t s = 0; s < count; ++s) {
    if (!interior[s] || state[s]) continue;
    std::vector<std::size_t> path;
    std::int64_t u = static_cast<std::int64_t>(s);
    while (u >= 0 && interior[u] && state[u] == 0) {
      state[u] = 1;
      path.push_back(static_cast<std::size_t>(u));
      u = parent[u];
    }
    if (u >= 0 && interior[u] && state[u] == 1) {
      ++out.cycles;
      r.fail({M.point(static_cast<std::size_t>(u))}, "parent chain returns to " + to_string(M.point(static_cast<std::size_t>(u))));
    }
    for (auto p : path) state[p] = 2;
  }

  out.complete = out.interior > 0;
  // A core marker off every bracket and every ladder shows that T misses a
  // cell. Only the marker below it in the same column can run a ladder through it.
  for (std::size_t i = 0; i < count && !out.cocomplete; ++i) {
    const Point x = M.point(i);
    if (!in_core(x)) continue;
    bool on_tree = false;
    for (int dx : {0, 1}) {
      Point col = x;
      col[0] += dx;
      col[1] = x[1] - 1;
      anchors.scan_from(col, [&](std::size_t, Coord h) {
        if (h > x[1] + 1) return false;
        for (const auto& o : kBracket)
          if (o[0] == -dx && h + o[1] == x[1]) on_tree = true;
        return true;
      });
    }
    if (const auto z = marks.below(x); z && ladder_end(M.point(*z)) >= x[1]) on_tree = true;
    if (!on_tree) out.cocomplete = true;
  }
  if (count == 0) {
    out.warnings.push_back("no markers in the core window; nothing to check");
  } else {
    if (!out.complete) r.fail({}, "no marker has its whole bracket and ladder in the core window");
    if (!out.cocomplete) r.fail({}, "no core cell is shown to avoid T");
  }
  r.checked = out.interior;

  if (degrees) {
    std::map<Point, std::int64_t> deg;
    std::map<Point, Point> root;
    auto find = [&](Point p) {
      while (true) {
        auto it = root.find(p);
        if (it == root.end() || it->second == p) return p;
        p = it->second;
      }
    };
    std::set<std::array<Point, 2>> seen;
    for (auto e : t.edges()) {
      if (e[1] < e[0]) std::swap(e[0], e[1]);
      if (!seen.insert(e).second) continue;
      ++deg[e[0]];
      ++deg[e[1]];
      Point a = find(e[0]), b = find(e[1]);
      if (a == b) {
        ++out.cycles;
        r.fail({e[0], e[1]}, "T has a cycle through " + to_string(e[0]));
      } else {
        root[a] = b;
      }
    }
    out.max_degree = 0;
    for (const auto& [p, d] : deg) {
      out.max_degree = std::max(out.max_degree, d);
      if (d > 3) r.fail({p}, "vertex of degree " + std::to_string(d));
    }
  }
  return out;
}

}  // namespace strongmark
