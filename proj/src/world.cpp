#include "strongmark/world.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace strongmark {

namespace {

std::string str(Coord v) { return std::to_string(v); }

// Every bucket index along one axis met by [lo, hi].
std::vector<Coord> axis_buckets(Coord lo, Coord hi, Coord L, Coord width, Coord count, bool torus) {
  std::vector<Coord> out;
  if (torus) {
    if (hi - lo + 1 >= L) {
      for (Coord b = 0; b < count; ++b) out.push_back(b);
      return out;
    }
    Coord c = lo;
    while (c <= hi) {
      const Coord r = floor_mod(c, L);
      out.push_back(r / width);
      c += std::min(width - r % width, L - r);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  lo = std::max<Coord>(lo, 0);
  hi = std::min(hi, L - 1);
  for (Coord b = lo / width; lo <= hi && b <= hi / width; ++b) out.push_back(b);
  return out;
}

}  // namespace

World World::torus(std::vector<Coord> L) {
  for (Coord l : L)
    if (l < 1) throw Error(ErrorCode::InvalidArgument, "world sides must be positive");
  World w;
  w.n = static_cast<int>(L.size());
  w.L = std::move(L);
  w.mode = WorldMode::Torus;
  return w;
}

World World::window(std::vector<Coord> L, Coord margin) {
  World w = torus(std::move(L));
  w.mode = WorldMode::Window;
  w.margin = margin;
  return w;
}

Coord World::cell_count() const { return box().cell_count(); }

Rect World::box() const {
  std::vector<Coord> lo(n, 0), hi(n);
  for (int j = 0; j < n; ++j) hi[j] = L[j] - 1;
  return Rect(std::move(lo), std::move(hi));
}

std::optional<Rect> World::checked_box() const {
  if (is_torus()) return box();
  std::vector<Coord> lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    lo[j] = margin;
    hi[j] = L[j] - 1 - margin;
    if (lo[j] > hi[j]) return std::nullopt;
  }
  return Rect(std::move(lo), std::move(hi));
}

Point World::wrap(std::span<const Coord> x) const {
  Point p(x.begin(), x.end());
  wrap_in_place(p);
  return p;
}

void World::wrap_in_place(std::span<Coord> x) const {
  if (static_cast<int>(x.size()) != n) throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
  if (!is_torus()) return;
  for (int j = 0; j < n; ++j) x[j] = floor_mod(x[j], L[j]);
}

bool World::contains(std::span<const Coord> x) const {
  if (is_torus()) return true;
  for (int j = 0; j < n; ++j)
    if (x[j] < 0 || x[j] >= L[j]) return false;
  return true;
}

Coord World::distance(std::span<const Coord> x, std::span<const Coord> y) const {
  if (!is_torus()) return chebyshev(x, y);
  Coord m = 0;
  for (int j = 0; j < n; ++j) {
    const Coord a = floor_mod(x[j] - y[j], L[j]);
    m = std::max(m, std::min(a, L[j] - a));
  }
  return m;
}

Tiling::Tiling(World world, std::vector<Rect> regions) : world_(std::move(world)), regions_(std::move(regions)) {
  for (auto& r : regions_) {
    if (r.dim() != world_.n) throw Error(ErrorCode::DimensionMismatch, "region of wrong dimension");
    if (world_.is_torus()) {
      Point shift(world_.n);
      for (int j = 0; j < world_.n; ++j) shift[j] = floor_mod(r.lo(j), world_.L[j]) - r.lo(j);
      r = r.translated(shift);
    }
  }
  index();
}

void Tiling::index() {
  const int n = world_.n;
  bucket_.assign(n, 0);
  nb_.assign(n, 1);
  members_.clear();
  if (regions_.empty()) return;
  for (int j = 0; j < n; ++j) {
    Coord w = kInfinity;
    for (const auto& r : regions_) w = std::min(w, r.side(j) + 1);
    bucket_[j] = std::max<Coord>(1, std::min(w, world_.L[j]));
    nb_[j] = ceil_div(world_.L[j], bucket_[j]);
  }
  Coord total = 1;
  for (Coord c : nb_) total = checked_mul(total, c);
  members_.assign(static_cast<std::size_t>(total), {});
  for (std::size_t k = 0; k < regions_.size(); ++k)
    for (auto b : buckets_over(regions_[k])) members_[b].push_back(static_cast<int>(k));
}

std::vector<std::size_t> Tiling::buckets_over(const Rect& r) const {
  const int n = world_.n;
  std::vector<std::vector<Coord>> per(n);
  for (int j = 0; j < n; ++j) {
    per[j] = axis_buckets(r.lo(j), r.hi(j), world_.L[j], bucket_[j], nb_[j], world_.is_torus());
    if (per[j].empty()) return {};
  }
  std::vector<std::size_t> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::size_t flat = 0;
    for (int j = 0; j < n; ++j) flat = flat * static_cast<std::size_t>(nb_[j]) + static_cast<std::size_t>(per[j][idx[j]]);
    out.push_back(flat);
    int j = n - 1;
    while (j >= 0 && ++idx[j] == per[j].size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

int Tiling::region_of(std::span<const Coord> x) const {
  if (!world_.contains(x)) return -1;
  const Point p = world_.wrap(x);
  std::size_t flat = 0;
  for (int j = 0; j < world_.n; ++j)
    flat = flat * static_cast<std::size_t>(nb_[j]) + static_cast<std::size_t>(p[j] / bucket_[j]);
  for (int k : members_[flat]) {
    const Rect& r = regions_[k];
    bool in = true;
    for (int j = 0; j < world_.n && in; ++j) {
      if (world_.is_torus())
        in = floor_mod(p[j] - r.lo(j), world_.L[j]) <= r.side(j);
      else
        in = r.lo(j) <= p[j] && p[j] <= r.hi(j);
    }
    if (in) return k;
  }
  return -1;
}

Rect Tiling::copy_containing(int k, std::span<const Coord> x) const {
  const Rect& r = regions_[k];
  if (!world_.is_torus()) return r;
  Point shift(world_.n);
  for (int j = 0; j < world_.n; ++j) shift[j] = x[j] - floor_mod(x[j] - r.lo(j), world_.L[j]) - r.lo(j);
  return r.translated(shift);
}

std::vector<Neighbor> Tiling::near(int k, Coord radius) const {
  const int n = world_.n;
  const Rect& R = regions_[k];
  const Rect ext = extension(R, radius);
  std::set<int> cand;
  for (auto b : buckets_over(ext))
    for (int t : members_[b]) cand.insert(t);
  std::vector<Neighbor> out;
  for (int t : cand) {
    const Rect& T = regions_[t];
    std::vector<std::vector<Coord>> ks(n);
    for (int j = 0; j < n; ++j) {
      if (!world_.is_torus()) {
        ks[j] = {0};
        continue;
      }
      const Coord L = world_.L[j];
      for (Coord q = ceil_div(ext.lo(j) - T.hi(j), L); q <= floor_div(ext.hi(j) - T.lo(j), L); ++q)
        ks[j].push_back(q * L);
      if (ks[j].empty()) break;
    }
    bool any = true;
    for (int j = 0; j < n; ++j) any = any && !ks[j].empty();
    if (!any) continue;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      Point s(n);
      bool zero = true;
      for (int j = 0; j < n; ++j) {
        s[j] = ks[j][idx[j]];
        zero = zero && s[j] == 0;
      }
      if (!(t == k && zero)) {
        const Coord dist = rect_distance(T.translated(s), R);
        if (dist <= radius) out.push_back({t, s, dist});
      }
      int j = n - 1;
      while (j >= 0 && ++idx[j] == ks[j].size()) idx[j--] = 0;
      if (j < 0) break;
    }
  }
  return out;
}

Coord Tiling::min_side() const {
  Coord m = kInfinity;
  for (const auto& r : regions_)
    for (int j = 0; j < r.dim(); ++j) m = std::min(m, r.side(j));
  return m;
}

Coord Tiling::max_side() const {
  Coord m = 0;
  for (const auto& r : regions_)
    for (int j = 0; j < r.dim(); ++j) m = std::max(m, r.side(j));
  return m;
}

std::vector<std::string> Tiling::violations() const {
  std::vector<std::string> out;
  Coord cells = 0;
  const Rect box = world_.box();
  for (std::size_t k = 0; k < regions_.size(); ++k) {
    const Rect& r = regions_[k];
    if (!world_.is_torus() && !box.contains(r)) out.push_back("region " + to_string(r) + " leaves the window");
    for (int j = 0; j < world_.n; ++j)
      if (r.side(j) + 1 > world_.L[j]) out.push_back("region " + to_string(r) + " longer than the world");
    cells = checked_add(cells, r.cell_count());
    for (const auto& nb : near(static_cast<int>(k), 0))
      if (nb.distance == 0)
        out.push_back("regions " + to_string(r) + " and " + to_string(regions_[nb.region]) + " overlap");
  }
  if (cells != world_.cell_count())
    out.push_back("regions cover " + str(cells) + " cells of " + str(world_.cell_count()));
  return out;
}

std::vector<Coord> compose_length(Coord L, Coord d) {
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "side length must be non-negative");
  const Coord k = L / (d + 1);
  const Coord big = L - k * (d + 1);
  if (k == 0 || big > k)
    throw Error(ErrorCode::InfeasibleSides,
                str(L) + " cells cannot be split into parts of " + str(d + 1) + " and " + str(d + 2) + " cells");
  std::vector<Coord> out(static_cast<std::size_t>(big), d + 2);
  out.resize(static_cast<std::size_t>(k), d + 1);
  return out;
}

std::uint64_t SplitMix::next() {
  std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix::below(std::uint64_t bound) {
  const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return x % bound;
}

namespace {

template <class T>
void shuffle(std::vector<T>& v, SplitMix& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

std::vector<Interval> lay_out(const std::vector<Coord>& parts, Coord start) {
  std::vector<Interval> out;
  Coord c = start;
  for (Coord p : parts) {
    out.push_back({c, c + p - 1});
    c += p;
  }
  return out;
}

}  // namespace

Tiling build_tiling(const World& world, Coord d, TilingStyle style, std::uint64_t seed) {
  const int n = world.n;
  std::vector<std::vector<Coord>> comp(n);
  for (int j = 0; j < n; ++j) comp[j] = compose_length(world.L[j], d);
  SplitMix rng(seed);
  std::vector<Rect> regions;
  auto slabs0 = comp[0];
  if (style == TilingStyle::Brick) shuffle(slabs0, rng);
  for (const auto& slab : lay_out(slabs0, 0)) {
    std::vector<std::vector<Interval>> axes{{slab}};
    for (int j = 1; j < n; ++j) {
      auto parts = comp[j];
      Coord start = 0;
      if (style == TilingStyle::Brick) {
        shuffle(parts, rng);
        if (world.is_torus()) start = static_cast<Coord>(rng.below(static_cast<std::uint64_t>(world.L[j])));
      }
      axes.push_back(lay_out(parts, start));
    }
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<Interval> sides(n);
      for (int j = 0; j < n; ++j) sides[j] = axes[j][idx[j]];
      regions.push_back(Rect::from_intervals(sides));
      int j = n - 1;
      while (j >= 0 && ++idx[j] == axes[j].size()) idx[j--] = 0;
      if (j < 0) break;
    }
  }
  return Tiling(world, std::move(regions));
}

}  // namespace strongmark
