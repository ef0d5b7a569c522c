#include "strongmark/verify.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

namespace strongmark {

namespace {

std::string str(Coord v) { return v == kInfinity ? std::string("inf") : std::to_string(v); }

Coord abs_c(Coord x) { return x < 0 ? -x : x; }

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (Coord c : p) h = (h ^ static_cast<std::uint64_t>(c)) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

// Markers grouped into lines along one axis: key = the other coordinates in
// order, positions sorted. Lines are in lexicographic key order.
struct Lines {
  int n = 0;
  std::vector<Coord> keys;          // (n-1) per line
  std::vector<std::size_t> start;   // into pos; size lines+1
  std::vector<Coord> pos;

  std::size_t count() const { return start.empty() ? 0 : start.size() - 1; }
  std::span<const Coord> key(std::size_t l) const { return {keys.data() + l * (n - 1), std::size_t(n - 1)}; }
  std::span<const Coord> at(std::size_t l) const { return {pos.data() + start[l], start[l + 1] - start[l]}; }

  // Index of the line with this key, or count().
  std::size_t find(std::span<const Coord> k) const {
    std::size_t lo = 0, hi = count();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      auto m = key(mid);
      if (std::lexicographical_compare(m.begin(), m.end(), k.begin(), k.end()))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < count() && std::equal(k.begin(), k.end(), key(lo).begin())) return lo;
    return count();
  }
};

// `wrap` reduces coordinates into the torus first.
Lines lines_along(const MarkerSet& M, int axis, const World* wrap, bool dedupe = true) {
  const int n = M.dim();
  const std::size_t m = M.size();
  std::vector<Coord> rec(m * n);
  for (std::size_t p = 0; p < m; ++p) {
    auto x = M[p];
    int c = 0;
    for (int j = 0; j < n; ++j) {
      const Coord v = wrap && wrap->is_torus() ? floor_mod(x[j], wrap->L[j]) : x[j];
      if (j == axis)
        rec[p * n + n - 1] = v;
      else
        rec[p * n + c++] = v;
    }
  }
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(rec.begin() + a * n, rec.begin() + a * n + n, rec.begin() + b * n,
                                        rec.begin() + b * n + n);
  });
  Lines L;
  L.n = n;
  for (std::size_t q = 0; q < m; ++q) {
    const Coord* r = rec.data() + idx[q] * n;
    const bool same = !L.start.empty() && std::equal(r, r + n - 1, L.keys.end() - (n - 1));
    if (!same) {
      L.start.push_back(L.pos.size());
      L.keys.insert(L.keys.end(), r, r + n - 1);
    }
    if (dedupe && same && L.pos.back() == r[n - 1]) continue;
    L.pos.push_back(r[n - 1]);
  }
  L.start.push_back(L.pos.size());
  return L;
}

// Worst forward and backward distance from the cells [lo, hi] of a line
// to the sorted positions; kInfinity when some cell has none that way.
struct SegmentWorst {
  Coord fwd = 0, bwd = 0;
  Coord fwd_at = 0, bwd_at = 0;  // a cell attaining each
};

SegmentWorst segment_worst(std::span<const Coord> p, Coord lo, Coord hi) {
  SegmentWorst w;
  auto next_from = [&](Coord x) -> Coord {
    auto it = std::lower_bound(p.begin(), p.end(), x);
    return it == p.end() ? kInfinity : *it - x;
  };
  auto prev_from = [&](Coord x) -> Coord {
    auto it = std::upper_bound(p.begin(), p.end(), x);
    return it == p.begin() ? kInfinity : x - *(it - 1);
  };
  auto note_f = [&](Coord x) {
    const Coord f = next_from(x);
    if (f > w.fwd) w.fwd = f, w.fwd_at = x;
  };
  auto note_b = [&](Coord x) {
    const Coord b = prev_from(x);
    if (b > w.bwd) w.bwd = b, w.bwd_at = x;
  };
  note_f(lo);
  note_b(hi);
  for (auto it = std::lower_bound(p.begin(), p.end(), lo); it != p.end() && *it <= hi; ++it) {
    if (*it < hi) note_f(*it + 1);
    if (*it > lo) note_b(*it - 1);
  }
  return w;
}

Point insert_coord(std::span<const Coord> key, int axis, Coord v) {
  Point x;
  int c = 0;
  for (int j = 0; j < static_cast<int>(key.size()) + 1; ++j) x.push_back(j == axis ? v : key[c++]);
  return x;
}

// Lexicographic walk over every point of a box.
template <class F>
void for_each_key(const std::vector<Interval>& box, F&& f) {
  const std::size_t n = box.size();
  for (const auto& iv : box)
    if (iv.lo > iv.hi) return;
  std::vector<Coord> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = box[j].lo;
  while (true) {
    if (!f(std::span<const Coord>(x))) return;
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (x[j] < box[j].hi) {
        ++x[j];
        goto next;
      }
      x[j] = box[j].lo;
    }
    return;
  next:;
  }
}

void note_hit(Report& r, const SegmentWorst& w, std::span<const Coord> key, int axis, Coord bound) {
  if (w.fwd > r.worst) r.worst = w.fwd;
  if (w.bwd > r.worst_b) r.worst_b = w.bwd;
  if (w.fwd > bound)
    r.fail({insert_coord(key, axis, w.fwd_at)}, "cell has no marker within " + str(bound) + " forward (" +
                                                      str(w.fwd) + ")");
  if (w.bwd > bound)
    r.fail({insert_coord(key, axis, w.bwd_at)}, "cell has no marker within " + str(bound) + " backward (" +
                                                      str(w.bwd) + ")");
}

Coord mod_inverse(Coord a, Coord m) {
  // extended Euclid; gcd(a, m) = 1
  __int128 t = 0, nt = 1, r = m, nr = floor_mod(a, m);
  while (nr != 0) {
    const __int128 q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (m == 1) return 0;
  return static_cast<Coord>(((t % m) + m) % m);
}

}  // namespace

void Report::fail(std::vector<Point> w, std::string msg) {
  if (pass) {
    witness = std::move(w);
    message = std::move(msg);
  }
  pass = false;
  ++violations;
}

// ---------------------------------------------------------------- spacing

namespace {

Report spacing_impl(const MarkerSet& M, Coord d, const World* world) {
  Report r;
  r.check = "spacing";
  r.bound = d;
  r.worst = kInfinity;
  r.checked = M.size();
  const int n = M.dim();
  if (M.size() < 2 || n == 0) return r;
  const bool torus = world && world->is_torus();
  const Lines L = lines_along(M, n - 1, world, false);
  const Coord Llast = torus ? world->L[n - 1] : 0;

  auto dist = [&](std::span<const Coord> ka, Coord a, std::span<const Coord> kb, Coord b) {
    Coord m = 0;
    for (int j = 0; j + 1 < n; ++j) {
      Coord t = abs_c(ka[j] - kb[j]);
      if (torus) t = std::min(floor_mod(ka[j] - kb[j], world->L[j]), floor_mod(kb[j] - ka[j], world->L[j]));
      m = std::max(m, t);
    }
    Coord t = abs_c(a - b);
    if (torus) t = std::min(floor_mod(a - b, Llast), floor_mod(b - a, Llast));
    return std::max(m, t);
  };
  auto record = [&](std::span<const Coord> ka, Coord a, std::span<const Coord> kb, Coord b) {
    const Coord dd = dist(ka, a, kb, b);
    if (dd < r.worst) r.worst = dd;
    if (dd < d)
      r.fail({insert_coord(ka, n - 1, a), insert_coord(kb, n - 1, b)},
             "pair at distance " + str(dd) + " below " + str(d));
  };

  // within one line: neighbours in sorted order, plus the wrap pair
  for (std::size_t l = 0; l < L.count(); ++l) {
    auto p = L.at(l);
    for (std::size_t k = 1; k < p.size(); ++k) record(L.key(l), p[k - 1], L.key(l), p[k]);
    if (torus && p.size() > 1) record(L.key(l), p.back(), L.key(l), p.front());
  }
  // offsets in (-d, d)^{n-1}, lexicographically positive
  std::vector<Interval> box(n - 1, Interval{-(d - 1), d - 1});
  Point other(n - 1);
  for_each_key(box, [&](std::span<const Coord> off) {
    auto nz = std::find_if(off.begin(), off.end(), [](Coord c) { return c != 0; });
    if (nz == off.end() || *nz < 0) return true;
    for (std::size_t l = 0; l < L.count(); ++l) {
      auto ka = L.key(l);
      for (int j = 0; j + 1 < n; ++j) {
        other[j] = ka[j] + off[j];
        if (torus) other[j] = floor_mod(other[j], world->L[j]);
      }
      const std::size_t m = L.find(other);
      if (m == L.count() || m == l) continue;
      auto A = L.at(l), B = L.at(m);
      // sweep: for each a, the B entries in (a-d, a+d)
      std::size_t lo = 0;
      for (Coord a : A) {
        while (lo < B.size() && B[lo] <= a - d) ++lo;
        for (std::size_t q = lo; q < B.size() && B[q] < a + d; ++q) record(ka, a, L.key(m), B[q]);
        // pairs that are close only across the wrap
        if (torus && a > Llast - d)
          for (std::size_t q = 0; q < B.size() && B[q] < a + d - Llast; ++q) record(ka, a, L.key(m), B[q]);
        if (torus && a < d - 1)
          for (std::size_t q = B.size(); q > 0 && B[q - 1] > Llast + a - d; --q) record(ka, a, L.key(m), B[q - 1]);
      }
    }
    return true;
  });
  return r;
}

}  // namespace

Report check_spacing(const MarkerSet& M, Coord d) { return spacing_impl(M, d, nullptr); }

Report check_spacing(const MarkerSet& M, Coord d, const World& world) {
  Report r = spacing_impl(M, d, &world);
  if (world.is_torus()) r.check = "spacing(torus)";
  return r;
}

// ---------------------------------------------------------------- axis hitting

Report check_axis_hitting(const MarkerSet& M, const Rect& domain, int axis, std::optional<Coord> bound) {
  const int n = domain.dim();
  if (M.dim() != n && !M.empty()) throw Error(ErrorCode::DimensionMismatch, "marker set and domain differ in dimension");
  if (axis < 0 || axis >= n) throw Error(ErrorCode::InvalidArgument, "axis out of range");
  Report r;
  r.check = "axis_hitting(" + std::to_string(axis + 1) + ")";
  r.bound = bound.value_or(kInfinity);
  const Lines L = lines_along(M, axis, nullptr);
  std::vector<Interval> box;
  for (int j = 0; j < n; ++j)
    if (j != axis) box.push_back(domain.interval(j));
  const Coord lo = domain.lo(axis), hi = domain.hi(axis);
  for_each_key(box, [&](std::span<const Coord> key) {
    ++r.checked;
    const std::size_t l = L.find(key);
    std::span<const Coord> p;
    if (l != L.count()) p = L.at(l);
    if (!bound) {
      auto it = std::lower_bound(p.begin(), p.end(), lo);
      if (it == p.end() || *it > hi) r.fail({insert_coord(key, axis, lo)}, "line through the domain has no marker in it");
      return true;
    }
    note_hit(r, segment_worst(p, lo, hi), key, axis, *bound);
    return true;
  });
  return r;
}

Report check_axis_hitting(const MarkerSet& M, const World& world, int axis, Coord bound) {
  if (!world.is_torus()) {
    auto box = world.checked_box();
    if (!box) {
      Report r;
      r.check = "axis_hitting(" + std::to_string(axis + 1) + ")";
      r.message = "window has no cells inside its margin";
      return r;
    }
    return check_axis_hitting(M, *box, axis, bound);
  }
  const int n = world.n;
  Report r;
  r.check = "axis_hitting(" + std::to_string(axis + 1) + ",torus)";
  r.bound = bound;
  const Lines L = lines_along(M, axis, &world);
  const Coord period = world.L[axis];
  std::vector<Interval> box;
  for (int j = 0; j < n; ++j)
    if (j != axis) box.push_back({0, world.L[j] - 1});
  std::size_t next = 0;
  for_each_key(box, [&](std::span<const Coord> key) {
    ++r.checked;
    if (next < L.count() && std::equal(key.begin(), key.end(), L.key(next).begin())) {
      auto p = L.at(next++);
      // largest cyclic gap; cells right after its start are worst both ways
      Coord gap = 0, at = 0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const Coord g = k + 1 < p.size() ? p[k + 1] - p[k] : p[0] + period - p[k];
        if (g > gap) gap = g, at = p[k];
      }
      const Coord worst = gap - 1;
      r.worst = std::max(r.worst, worst);
      r.worst_b = std::max(r.worst_b, worst);
      if (worst > bound)
        r.fail({insert_coord(key, axis, floor_mod(at + 1, period))},
               "cycle gap of " + str(gap) + " exceeds the bound " + str(bound));
      return true;
    }
    r.worst = r.worst_b = kInfinity;
    r.fail({insert_coord(key, axis, 0)}, "cycle without markers");
    return true;
  });
  return r;
}

// ---------------------------------------------------------------- general hitting

namespace {

void require_step(const Point& g, int n) {
  if (static_cast<int>(g.size()) != n) throw Error(ErrorCode::DimensionMismatch, "step has wrong dimension");
  if (std::all_of(g.begin(), g.end(), [](Coord c) { return c == 0; }))
    throw Error(ErrorCode::InvalidArgument, "step must be non-zero");
}

// Line through x along g: key with key_j0 in [0, |g_j0|) and x = key + t g.
struct LineParam {
  Point key;
  Coord t;
};

LineParam line_param(std::span<const Coord> x, const Point& g) {
  std::size_t j0 = 0;
  while (g[j0] == 0) ++j0;
  const Coord gj = g[j0];
  const Coord t = floor_div(x[j0], abs_c(gj)) * (gj > 0 ? 1 : -1);
  LineParam lp{Point(x.begin(), x.end()), t};
  for (std::size_t j = 0; j < g.size(); ++j) lp.key[j] -= t * g[j];
  return lp;
}

}  // namespace

Report check_general_hitting(const MarkerSet& M, const Rect& domain, const Point& g, std::optional<Coord> bound) {
  const int n = domain.dim();
  require_step(g, n);
  Report r;
  r.check = "general_hitting(" + to_string(g) + ")";
  r.bound = bound.value_or(kInfinity);
  std::unordered_map<Point, std::vector<Coord>, PointHash> lines;
  for (std::size_t p = 0; p < M.size(); ++p) {
    auto lp = line_param(M[p], g);
    lines[lp.key].push_back(lp.t);
  }
  for (auto& [k, ts] : lines) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  }
  // entry cells: x in domain with x - g outside
  for (int j = 0; j < n; ++j) {
    if (g[j] == 0) continue;
    std::vector<Interval> box;
    for (int k = 0; k < n; ++k) box.push_back(domain.interval(k));
    const Coord s = abs_c(g[j]);
    box[j] = g[j] > 0 ? Interval{domain.lo(j), std::min(domain.hi(j), domain.lo(j) + s - 1)}
                      : Interval{std::max(domain.lo(j), domain.hi(j) - s + 1), domain.hi(j)};
    for_each_key(box, [&](std::span<const Coord> x) {
      // counted once: skip if an earlier axis also makes x an entry cell
      for (int k = 0; k < j; ++k) {
        if (g[k] == 0) continue;
        const Coord y = x[k] - g[k];
        if (y < domain.lo(k) || y > domain.hi(k)) return true;
      }
      // last t with x + t g inside
      Coord steps = kInfinity;
      for (int k = 0; k < n; ++k) {
        if (g[k] > 0) steps = std::min(steps, floor_div(domain.hi(k) - x[k], g[k]));
        if (g[k] < 0) steps = std::min(steps, floor_div(x[k] - domain.lo(k), -g[k]));
      }
      const LineParam lp = line_param(x, g);
      const Coord tlo = lp.t, thi = lp.t + steps;
      r.checked += static_cast<std::uint64_t>(steps + 1);
      static const std::vector<Coord> none;
      auto it = lines.find(lp.key);
      const std::vector<Coord>& ts = it == lines.end() ? none : it->second;
      auto cell_at = [&](Coord t) {
        Point c = lp.key;
        for (int k = 0; k < n; ++k) c[k] += t * g[k];
        return c;
      };
      if (!bound) {
        auto f = std::lower_bound(ts.begin(), ts.end(), tlo);
        if (f == ts.end() || *f > thi) r.fail({cell_at(tlo)}, "line through the domain has no marker in it");
        return true;
      }
      const SegmentWorst w = segment_worst(ts, tlo, thi);
      r.worst = std::max(r.worst, w.fwd);
      r.worst_b = std::max(r.worst_b, w.bwd);
      if (w.fwd > *bound) r.fail({cell_at(w.fwd_at)}, "no marker within " + str(*bound) + " steps forward");
      if (w.bwd > *bound) r.fail({cell_at(w.bwd_at)}, "no marker within " + str(*bound) + " steps backward");
      return true;
    });
  }
  return r;
}

Report check_general_hitting(const MarkerSet& M, const World& world, const Point& g, Coord bound) {
  const int n = world.n;
  require_step(g, n);
  if (!world.is_torus()) {
    auto box = world.checked_box();
    if (!box) {
      Report r;
      r.check = "general_hitting(" + to_string(g) + ")";
      r.message = "window has no cells inside its margin";
      return r;
    }
    return check_general_hitting(M, *box, g, bound);
  }
  Report r;
  r.check = "general_hitting(" + to_string(g) + ",torus)";
  r.bound = bound;

  // orbit length along each axis and a pivot axis whose length every other divides
  std::vector<Coord> order(n, 1);
  for (int k = 0; k < n; ++k)
    if (floor_mod(g[k], world.L[k]) != 0) order[k] = world.L[k] / std::gcd(floor_mod(g[k], world.L[k]), world.L[k]);
  int pivot = -1;
  for (int j = 0; j < n && pivot < 0; ++j) {
    if (order[j] == 1) continue;
    bool ok = true;
    for (int k = 0; k < n; ++k) ok = ok && order[j] % order[k] == 0;
    if (ok) pivot = j;
  }
  Coord P = 1;
  for (int k = 0; k < n; ++k) P = std::lcm(P, order[k]);
  const Coord cells = world.cell_count();

  // orbit representative and position of a cell
  std::function<std::pair<Point, Coord>(std::span<const Coord>)> param;
  std::vector<std::int64_t> orbit_of;  // explicit labelling when no pivot exists
  std::vector<Coord> pos_of;
  std::vector<Point> reps;
  auto index_of = [&](std::span<const Coord> x) {
    std::size_t i = 0;
    for (int k = 0; k < n; ++k) i = i * static_cast<std::size_t>(world.L[k]) + static_cast<std::size_t>(x[k]);
    return i;
  };
  if (P == 1) {
    param = [&](std::span<const Coord> x) { return std::make_pair(world.wrap(x), Coord{0}); };
  } else if (pivot >= 0) {
    const Coord Lj = world.L[pivot];
    const Coord gj = floor_mod(g[pivot], Lj);
    const Coord gp = std::gcd(gj, Lj);
    const Coord inv = mod_inverse(gj / gp, P);
    param = [&, gp, inv](std::span<const Coord> x) {
      Point y = world.wrap(x);
      const Coord r0 = y[pivot] % gp;
      const Coord t = static_cast<Coord>((__int128((y[pivot] - r0) / gp) * inv) % P);
      for (int k = 0; k < n; ++k) y[k] = floor_mod(y[k] - static_cast<Coord>((__int128(t) * g[k]) % world.L[k]), world.L[k]);
      return std::make_pair(y, t);
    };
  } else {
    if (cells > (Coord(1) << 25)) throw Error(ErrorCode::SearchCapExceeded, "torus too large for orbit labelling");
    orbit_of.assign(static_cast<std::size_t>(cells), -1);
    pos_of.assign(static_cast<std::size_t>(cells), 0);
    for (std::size_t c = 0; c < orbit_of.size(); ++c) {
      if (orbit_of[c] >= 0) continue;
      Point x(n);
      std::size_t rest = c;
      for (int k = n - 1; k >= 0; --k) {
        x[k] = static_cast<Coord>(rest % static_cast<std::size_t>(world.L[k]));
        rest /= static_cast<std::size_t>(world.L[k]);
      }
      reps.push_back(x);
      Point y = x;
      for (Coord t = 0; t < P; ++t) {
        const std::size_t i = index_of(y);
        orbit_of[i] = static_cast<std::int64_t>(reps.size() - 1);
        pos_of[i] = t;
        for (int k = 0; k < n; ++k) y[k] = floor_mod(y[k] + g[k], world.L[k]);
      }
    }
    param = [&](std::span<const Coord> x) {
      const std::size_t i = index_of(world.wrap(x));
      return std::make_pair(reps[static_cast<std::size_t>(orbit_of[i])], pos_of[i]);
    };
  }

  std::unordered_map<Point, std::vector<Coord>, PointHash> orbits;
  for (std::size_t p = 0; p < M.size(); ++p) {
    auto [rep, t] = param(M[p]);
    orbits[rep].push_back(t);
  }
  const Coord total = cells / P;
  r.checked = static_cast<std::uint64_t>(cells);
  for (auto& [rep, ts] : orbits) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    Coord gap = 0, at = 0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const Coord d = k + 1 < ts.size() ? ts[k + 1] - ts[k] : ts[0] + P - ts[k];
      if (d > gap) gap = d, at = ts[k];
    }
    r.worst = std::max(r.worst, gap - 1);
    if (gap - 1 > bound) {
      Point c = rep;
      for (int k = 0; k < n; ++k) c[k] = floor_mod(c[k] + static_cast<Coord>((__int128(at + 1) * g[k]) % world.L[k]), world.L[k]);
      r.fail({c}, "orbit gap of " + str(gap) + " steps exceeds the bound " + str(bound));
    }
  }
  r.worst_b = r.worst;
  if (static_cast<Coord>(orbits.size()) < total) {
    r.worst = r.worst_b = kInfinity;
    // find one orbit without markers
    Point x(n, 0);
    for (Coord c = 0; c < cells; ++c) {
      Coord rest = c;
      for (int k = n - 1; k >= 0; --k) {
        x[k] = rest % world.L[k];
        rest /= world.L[k];
      }
      if (!orbits.count(param(x).first)) break;
    }
    r.fail({x}, str(total - static_cast<Coord>(orbits.size())) + " orbits without markers");
  }
  return r;
}

// ---------------------------------------------------------------- colourings

std::size_t EdgeColoring::cell_index(std::span<const Coord> x) const {
  std::size_t i = 0;
  for (int k = 0; k < world.n; ++k) i = i * static_cast<std::size_t>(world.L[k]) + static_cast<std::size_t>(x[k]);
  return i;
}

Point EdgeColoring::cell(std::size_t index) const {
  Point x(world.n);
  for (int k = world.n - 1; k >= 0; --k) {
    x[k] = static_cast<Coord>(index % static_cast<std::size_t>(world.L[k]));
    index /= static_cast<std::size_t>(world.L[k]);
  }
  return x;
}

Report check_coloring(const EdgeColoring& c, int max_colors) {
  Report r;
  r.check = "coloring";
  r.bound = max_colors;
  const World& w = c.world;
  const std::size_t m = c.gens.size();
  const std::size_t cells = static_cast<std::size_t>(w.cell_count());
  if (c.color.size() != cells * m) throw Error(ErrorCode::InvalidArgument, "colour table has the wrong size");
  for (const auto& g : c.gens) {
    Point twice(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) twice[k] = 2 * g[k];
    Point zero(g.size(), 0);
    if (w.is_torus() && w.wrap(twice) == zero) {
      r.fail({g}, "edges along " + to_string(g) + " coincide with their reverses on this torus");
      return r;
    }
  }
  std::array<bool, 256> used{};
  Point x(w.n, 0), y(w.n);
  std::vector<std::pair<int, std::size_t>> seen;  // colour, other endpoint
  for (std::size_t i = 0; i < cells; ++i) {
    if (i > 0)
      for (int k = w.n - 1; k >= 0; --k) {  // row-major odometer
        if (++x[k] < w.L[k]) break;
        x[k] = 0;
      }
    seen.clear();
    bool complete = true;
    for (std::size_t j = 0; j < m && complete; ++j) {
      for (int sgn : {1, -1}) {
        bool inside = true;
        for (int k = 0; k < w.n; ++k) {
          y[k] = x[k] + sgn * c.gens[j][k];
          if (y[k] < 0 || y[k] >= w.L[k]) {
            if (w.is_torus()) y[k] = floor_mod(y[k], w.L[k]);
            else inside = false;
          }
        }
        if (!inside) {
          complete = false;
          break;
        }
        const std::size_t other = c.cell_index(y);
        const std::uint8_t col = sgn > 0 ? c.color[i * m + j] : c.color[other * m + j];
        if (col == 0) {
          complete = false;
          break;
        }
        seen.push_back({col, other});
      }
    }
    if (!complete) continue;
    ++r.checked;
    for (std::size_t p = 0; p < seen.size(); ++p) {
      used[seen[p].first] = true;
      for (std::size_t q = p + 1; q < seen.size(); ++q)
        if (seen[p].first == seen[q].first)
          r.fail({x, c.cell(seen[p].second), c.cell(seen[q].second)},
                 "two edges at a vertex share colour " + std::to_string(seen[p].first));
    }
  }
  int count = 0, top = 0;
  for (int k = 1; k < 256; ++k)
    if (used[k]) {
      ++count;
      top = k;
    }
  r.worst = count;
  if (top > max_colors) r.fail({}, "colour " + std::to_string(top) + " out of range");
  if (count > max_colors) r.fail({}, std::to_string(count) + " colours used, more than " + std::to_string(max_colors));
  return r;
}

// ---------------------------------------------------------------- brute force

namespace {

struct Search {
  std::vector<Point> cells;
  std::vector<std::vector<int>> lines;       // line -> cells
  std::vector<std::vector<int>> cell_lines;  // cell -> lines
  std::vector<std::vector<int>> conflicts;   // cell -> cells closer than d
  std::vector<int> hit;                      // line -> markers on it
  std::vector<int> blocked;                  // cell -> chosen markers too close
  std::vector<int> chosen;
  std::size_t dirs = 1;
  std::uint64_t nodes = 0, cap = 0;

  void place(int c, int s) {
    for (int l : cell_lines[c]) hit[l] += s;
    for (int o : conflicts[c]) blocked[o] += s;
    blocked[c] += s;
  }

  bool dfs(std::size_t budget) {
    if (++nodes > cap) throw Error(ErrorCode::SearchCapExceeded, "brute-force search exceeded its node cap");
    int best = -1;
    std::size_t best_count = SIZE_MAX, unhit = 0;
    for (std::size_t l = 0; l < lines.size(); ++l) {
      if (hit[l]) continue;
      ++unhit;
      std::size_t avail = 0;
      for (int c : lines[l]) avail += blocked[c] == 0;
      if (avail < best_count) best_count = avail, best = static_cast<int>(l);
    }
    if (unhit == 0) return true;
    if (best_count == 0) return false;
    if ((unhit + dirs - 1) / dirs > budget) return false;
    for (int c : lines[best]) {
      if (blocked[c]) continue;
      place(c, 1);
      chosen.push_back(c);
      if (dfs(budget - 1)) return true;
      chosen.pop_back();
      place(c, -1);
    }
    return false;
  }
};

}  // namespace

BruteResult brute_min_marker(const Rect& r, Coord d, const std::vector<Point>& directions, std::uint64_t cap) {
  const int n = r.dim();
  if (r.cell_count() > 4096) throw Error(ErrorCode::SearchCapExceeded, "rectangle too large for brute force");
  Search S;
  S.cap = cap;
  S.dirs = std::max<std::size_t>(1, directions.size());
  std::vector<Interval> box;
  for (int j = 0; j < n; ++j) box.push_back(r.interval(j));
  for_each_key(box, [&](std::span<const Coord> x) {
    S.cells.emplace_back(x.begin(), x.end());
    return true;
  });
  S.cell_lines.resize(S.cells.size());
  for (const auto& g : directions) {
    require_step(g, n);
    std::map<Point, int> line_id;
    for (std::size_t c = 0; c < S.cells.size(); ++c) {
      const Point key = line_param(S.cells[c], g).key;
      auto [it, fresh] = line_id.emplace(key, static_cast<int>(S.lines.size()));
      if (fresh) S.lines.emplace_back();
      S.lines[it->second].push_back(static_cast<int>(c));
      S.cell_lines[c].push_back(it->second);
    }
  }
  S.conflicts.resize(S.cells.size());
  for (std::size_t a = 0; a < S.cells.size(); ++a)
    for (std::size_t b = 0; b < S.cells.size(); ++b)
      if (a != b && chebyshev(S.cells[a], S.cells[b]) < d) S.conflicts[a].push_back(static_cast<int>(b));
  S.hit.assign(S.lines.size(), 0);
  S.blocked.assign(S.cells.size(), 0);

  BruteResult res;
  for (std::size_t k = 0; k <= S.lines.size(); ++k) {
    S.chosen.clear();
    if (S.dfs(k)) {
      res.size = S.chosen.size();
      for (int c : S.chosen) res.witness.push_back(S.cells[c]);
      std::sort(res.witness.begin(), res.witness.end());
      break;
    }
  }
  res.nodes = S.nodes;
  return res;
}

// ---------------------------------------------------------------- locality

bool tilings_agree_near(const Tiling& a, const Tiling& b, const Point& cell, Coord radius) {
  if (!(a.world() == b.world())) return false;
  const Rect ball = extension(Rect::point(cell), radius);
  auto meeting = [&](const Tiling& t) {
    std::set<Rect> out;
    const World& w = t.world();
    for (const auto& r : t.regions()) {
      if (!w.is_torus()) {
        if (r.intersects(ball)) out.insert(r);
        continue;
      }
      // translates by whole periods that could meet the ball
      std::vector<std::vector<Coord>> ks(w.n);
      for (int j = 0; j < w.n; ++j)
        for (Coord q = ceil_div(ball.lo(j) - r.hi(j), w.L[j]); q <= floor_div(ball.hi(j) - r.lo(j), w.L[j]); ++q)
          ks[j].push_back(q * w.L[j]);
      std::vector<std::size_t> idx(w.n, 0);
      bool any = std::all_of(ks.begin(), ks.end(), [](const auto& v) { return !v.empty(); });
      while (any) {
        Point s(w.n);
        for (int j = 0; j < w.n; ++j) s[j] = ks[j][idx[j]];
        const Rect tr = r.translated(s);
        if (tr.intersects(ball)) out.insert(tr);
        int j = w.n - 1;
        while (j >= 0 && ++idx[j] == ks[j].size()) idx[j--] = 0;
        if (j < 0) break;
      }
    }
    return out;
  };
  return meeting(a) == meeting(b);
}

Report check_locality(const MarkerBuilder& build, const Tiling& a, const Tiling& b, const Point& cell, Coord radius) {
  Report r;
  r.check = "locality";
  r.bound = radius;
  r.witness = {cell};
  if (!tilings_agree_near(a, b, cell, radius)) {
    r.fail({cell}, "tilings differ inside the ball; nothing to compare");
    return r;
  }
  const MarkerSet ma = build(a), mb = build(b);
  const Point x = a.world().wrap(cell);
  const bool in_a = ma.contains(x), in_b = mb.contains(x);
  r.checked = 1;
  if (in_a != in_b) r.fail({cell}, std::string("membership differs: ") + (in_a ? "in" : "out") + " vs " + (in_b ? "in" : "out"));
  return r;
}

}  // namespace strongmark
