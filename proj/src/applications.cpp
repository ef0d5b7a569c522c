#include "strongmark/applications.hpp"

#include <algorithm>
#include <numeric>

#include "strongmark/error.hpp"

namespace strongmark {

int offset_color(Coord a, Coord b, int j, int m) {
  const bool even_b = b % 2 == 0;
  if ((a + b) % 2 == 0 || a > kSpareOffset) return even_b ? j : m + j;
  if (a == kSpareOffset) return 2 * m + 1;
  return even_b ? m + j : j;
}

namespace {

constexpr Coord kDenseCap = Coord{1} << 28;

std::size_t row_major(const World& w, std::span<const Coord> x) {
  std::size_t i = 0;
  for (int k = 0; k < w.n; ++k) i = i * static_cast<std::size_t>(w.L[k]) + static_cast<std::size_t>(x[k]);
  return i;
}

void color_along(EdgeColoring& c, const std::vector<char>& marked, std::size_t j, bool keep) {
  const World& w = c.world;
  const std::size_t m = c.gens.size();
  const std::size_t cells = marked.size();
  const Point& g = c.gens[j];
  std::vector<char> seen(cells, 0);
  std::vector<std::size_t> seq;
  std::vector<Coord> fwd, bwd;
  Point x(w.n), y(w.n);

  for (std::size_t start = 0; start < cells; ++start) {
    if (seen[start]) continue;
    x = c.cell(start);
    if (!w.is_torus()) {
      // walk back to the first cell of this progression
      for (;;) {
        for (int k = 0; k < w.n; ++k) y[k] = x[k] - g[k];
        if (!w.contains(y)) break;
        x = y;
      }
    }
    seq.clear();
    for (;;) {
      const std::size_t i = row_major(w, x);
      if (seen[i]) break;
      seen[i] = 1;
      seq.push_back(i);
      bool inside = true;
      for (int k = 0; k < w.n; ++k) {
        x[k] += g[k];
        if (x[k] < 0 || x[k] >= w.L[k]) {
          if (w.is_torus()) x[k] = floor_mod(x[k], w.L[k]);
          else inside = false;
        }
      }
      if (!inside) break;
    }
    const std::size_t p = seq.size();
    const std::size_t laps = w.is_torus() ? 2 : 1;
    bool any = false;
    for (std::size_t i : seq) any = any || marked[i];
    if (!any && w.is_torus())
      throw Error(ErrorCode::InvalidArgument, "a progression along " + to_string(g) + " holds no marker");

    // forward offsets from a backward sweep, backward offsets from a forward one
    fwd.assign(p, -1);
    bwd.assign(p, -1);
    std::int64_t next = -1;
    for (std::size_t s = laps * p; s-- > 0;) {
      const std::size_t i = s >= p ? s - p : s;
      if (marked[seq[i]]) next = static_cast<std::int64_t>(s);
      if (s < p && next >= 0) fwd[i] = next - static_cast<std::int64_t>(s);
    }
    std::int64_t prev = -1;
    for (std::size_t s = 0; s < laps * p; ++s) {
      const std::size_t i = s >= p ? s - p : s;
      if (marked[seq[i]]) prev = static_cast<std::int64_t>(s);
      if (s >= (laps - 1) * p && prev >= 0) bwd[i] = static_cast<std::int64_t>(s) - prev;
    }
    for (std::size_t i = 0; i < p; ++i) {
      const std::size_t at = seq[i] * m + j;
      if (fwd[i] >= 0 && bwd[i] >= 0)
        c.color[at] = static_cast<std::uint8_t>(offset_color(fwd[i], bwd[i], static_cast<int>(j) + 1, static_cast<int>(m)));
      if (keep) {
        c.a[at] = fwd[i];
        c.b[at] = bwd[i];
      }
    }
  }
}

}  // namespace

EdgeColoring general_edge_coloring(const World& world, const std::vector<Point>& gens, const MarkerSet& M,
                                   bool keep_offsets) {
  if (M.spacing() < kColoringSpacing)
    throw Error(ErrorCode::SpacingTooSmall, "edge colouring needs marker spacing at least 100, got " +
                                                std::to_string(M.spacing()));
  if (M.dim() != world.n) throw Error(ErrorCode::DimensionMismatch, "marker set and world differ in dimension");
  if (gens.empty() || 2 * gens.size() + 1 > 255) throw Error(ErrorCode::InvalidArgument, "bad generator count");
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != world.n) throw Error(ErrorCode::DimensionMismatch, "generator dimension");
    if (std::all_of(g.begin(), g.end(), [](Coord v) { return v == 0; }))
      throw Error(ErrorCode::DegenerateDirection, "zero generator");
  }
  if (world.cell_count() > kDenseCap) throw Error(ErrorCode::InvalidArgument, "world too large for a dense colouring");

  EdgeColoring c;
  c.world = world;
  c.gens = gens;
  const std::size_t cells = static_cast<std::size_t>(world.cell_count());
  c.color.assign(cells * gens.size(), 0);
  if (keep_offsets) {
    c.a.assign(cells * gens.size(), -1);
    c.b.assign(cells * gens.size(), -1);
  }

  std::vector<char> marked(cells, 0);
  for (std::size_t k = 0; k < M.size(); ++k) {
    if (world.is_torus()) {
      marked[row_major(world, world.wrap(M[k]))] = 1;
    } else if (world.contains(M[k])) {
      marked[row_major(world, M[k])] = 1;
    }
  }
  for (std::size_t j = 0; j < gens.size(); ++j) color_along(c, marked, j, keep_offsets);
  return c;
}

EdgeColoring edge_coloring(const World& world, const MarkerSet& M, bool keep_offsets) {
  std::vector<Point> basis(world.n, Point(world.n, 0));
  for (int i = 0; i < world.n; ++i) basis[i][i] = 1;
  return general_edge_coloring(world, basis, M, keep_offsets);
}

namespace {

// Markers ordered column by column: a column is a line along e_2, keyed by
// the remaining coordinates.
bool column_less(std::span<const Coord> p, std::span<const Coord> q) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k == 1) continue;
    if (p[k] != q[k]) return p[k] < q[k];
  }
  return p[1] < q[1];
}

}  // namespace

TreeSection tree_section(const World& world, const MarkerSet& M) {
  if (world.is_torus()) throw Error(ErrorCode::WrongMode, "tree sections are built in window mode only");
  if (world.n < 2) throw Error(ErrorCode::InvalidArgument, "tree sections need n >= 2");
  if (M.spacing() < kTreeSpacing)
    throw Error(ErrorCode::SpacingTooSmall, "tree section needs marker spacing at least 10, got " +
                                                std::to_string(M.spacing()));
  if (M.dim() != world.n) throw Error(ErrorCode::DimensionMismatch, "marker set and world differ in dimension");

  TreeSection t;
  t.world = world;
  t.markers = M;
  t.markers.normalize();
  const MarkerSet& S = t.markers;
  const std::size_t count = S.size();
  for (std::size_t i = 0; i < count; ++i)
    if (!world.contains(S[i])) throw Error(ErrorCode::InvalidArgument, "marker " + to_string(S.point(i)) + " outside the window");
  t.brackets = S;

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  if (world.n > 2) std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return column_less(S[p], S[q]); });

  // first marker in the column of `probe` strictly above `probe`
  Point probe(world.n);
  auto above = [&](std::span<const Coord> p) -> std::int64_t {
    auto it = std::upper_bound(order.begin(), order.end(), p,
                               [&](std::span<const Coord> v, std::size_t q) { return column_less(v, S[q]); });
    if (it == order.end()) return -1;
    const auto y = S[*it];
    for (int k = 0; k < world.n; ++k)
      if (k != 1 && y[k] != p[k]) return -1;
    return static_cast<std::int64_t>(*it);
  };

  t.k.assign(count, -1);
  t.parent.assign(count, -1);
  for (std::size_t pos = 0; pos < count; ++pos) {
    const std::size_t i = order[pos];
    const auto x = S[i];
    std::int64_t best = -1;
    if (pos + 1 < count) {
      const auto y = S[order[pos + 1]];
      bool same = true;
      for (int k = 0; k < world.n; ++k) same = same && (k == 1 || y[k] == x[k]);
      if (same) best = static_cast<std::int64_t>(order[pos + 1]);
    }
    std::copy(x.begin(), x.end(), probe.begin());
    probe[0] += 1;
    const std::int64_t side = above(probe);
    if (side >= 0 && (best < 0 || S[side][1] < S[best][1])) best = side;
    if (best < 0) continue;
    t.k[i] = S[best][1] - 1 - x[1];
    t.parent[i] = best;
  }
  return t;
}

std::vector<std::array<Point, 2>> TreeSection::edges() const {
  std::vector<std::array<Point, 2>> out;
  for (std::size_t q = 0; q < brackets.size(); ++q) {
    const Point y = brackets.point(q);
    for (std::size_t s = 0; s + 1 < kBracket.size(); ++s) {
      Point u = y, v = y;
      u[0] += kBracket[s][0];
      u[1] += kBracket[s][1];
      v[0] += kBracket[s + 1][0];
      v[1] += kBracket[s + 1][1];
      out.push_back({u, v});
    }
  }
  for (std::size_t i = 0; i < markers.size(); ++i) {
    for (Coord s = 1; s < k[i]; ++s) {
      Point u = markers.point(i), v = u;
      u[1] += s;
      v[1] += s + 1;
      out.push_back({u, v});
    }
  }
  return out;
}

}  // namespace strongmark
