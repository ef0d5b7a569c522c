#include "strongmark/shift_sim.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace strongmark {

namespace {

std::string str(Coord v) { return std::to_string(v); }

}  // namespace

// ---------------------------------------------------------------- schedules

std::vector<Coord> shift_package_counts(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  std::vector<Coord> N(n + 1, 0);
  const Coord four = checked_pow(4, n - 1);
  N[1] = four;
  for (int i = 1; i < n; ++i) {
    Coord next = checked_mul(four, checked_pow(checked_add(2 * N[i], 1), n - 1));
    next = checked_add(next, checked_mul(checked_mul(n - 1, checked_pow(2, n + 1)), N[i]));
    N[i + 1] = checked_add(next, 5);
  }
  return N;
}

ShiftSchedule shift_schedule_from(const RectSchedule& rect) {
  ShiftSchedule s;
  s.rect = rect;
  s.N = shift_package_counts(rect.n);
  s.D1 = checked_mul(checked_mul(4, s.N[rect.n]), rect.d[1]);
  s.D = checked_mul(2, s.D1);
  return s;
}

ShiftSchedule minimal_shift_schedule(int n, Coord d0) { return shift_schedule_from(minimal_rect_schedule(n, d0)); }

ShiftSchedule paper_shift_schedule(int n, Coord d0) { return shift_schedule_from(paper_rect_schedule(n, d0)); }

ShiftSchedule minimal_shift_multiples_schedule(int n, Coord d0, const AlphaTable& table) {
  return shift_schedule_from(minimal_multiples_schedule(n, d0, table));
}

// ---------------------------------------------------------------- region schedule

RegionSchedule greedy_schedule(const Tiling& tiling, Coord D1) {
  RegionSchedule s;
  s.step_of.assign(tiling.size(), -1);
  for (std::size_t k = 0; k < tiling.size(); ++k) {
    std::set<int> taken;
    for (const auto& nb : tiling.near(static_cast<int>(k), 2 * D1))
      if (nb.region != static_cast<int>(k) && s.step_of[nb.region] >= 0) taken.insert(s.step_of[nb.region]);
    int c = 0;
    while (taken.count(c)) ++c;
    s.step_of[k] = c;
    if (c >= static_cast<int>(s.steps.size())) s.steps.resize(c + 1);
    s.steps[c].push_back(static_cast<int>(k));
  }
  return s;
}

std::vector<std::string> schedule_violations(const Tiling& tiling, const RegionSchedule& s, Coord D1) {
  std::vector<std::string> out;
  if (s.step_of.size() != tiling.size()) {
    out.push_back("schedule does not cover the tiling");
    return out;
  }
  std::vector<int> seen(tiling.size(), 0);
  for (std::size_t st = 0; st < s.steps.size(); ++st)
    for (int k : s.steps[st]) {
      ++seen[k];
      if (s.step_of[k] != static_cast<int>(st)) out.push_back("region " + str(k) + " listed in the wrong step");
    }
  for (std::size_t k = 0; k < tiling.size(); ++k)
    if (seen[k] != 1) out.push_back("region " + str(static_cast<Coord>(k)) + " scheduled " + str(seen[k]) + " times");
  for (std::size_t k = 0; k < tiling.size(); ++k)
    for (const auto& nb : tiling.near(static_cast<int>(k), 2 * D1))
      if (nb.region != static_cast<int>(k) && s.step_of[nb.region] == s.step_of[k])
        out.push_back("regions " + to_string(tiling[k]) + " and " + to_string(tiling[nb.region]) + " share step " +
                      str(s.step_of[k]) + " at distance " + str(nb.distance));
  return out;
}

RegionSchedule schedule_regions(const Tiling& tiling, Coord D1) {
  // Block key of the least corner: equal keys mean anchors 5 blocks apart
  // on some axis, so the regions are more than 2 D_1 apart. Only the
  // region's own position is read, which keeps the construction local.
  const int n = tiling.world().n;
  RegionSchedule s;
  s.local = true;
  s.step_of.assign(tiling.size(), 0);
  std::map<std::vector<Coord>, std::vector<int>> byKey;
  for (std::size_t k = 0; k < tiling.size(); ++k) {
    std::vector<Coord> key(n);
    for (int j = 0; j < n; ++j) key[j] = floor_mod(floor_div(tiling[k].lo(j), D1), 5);
    byKey[key].push_back(static_cast<int>(k));
  }
  for (auto& [key, members] : byKey) {
    for (int k : members) s.step_of[k] = static_cast<int>(s.steps.size());
    s.steps.push_back(std::move(members));
  }
  if (schedule_violations(tiling, s, D1).empty()) return s;
  return greedy_schedule(tiling, D1);
}

// ---------------------------------------------------------------- construction

namespace {

void require_tiling(const Tiling& tiling, const ShiftSchedule& sched) {
  const int n = sched.rect.n;
  if (tiling.world().n != n) throw Error(ErrorCode::DimensionMismatch, "tiling dimension differs from schedule");
  if (tiling.size() == 0) throw Error(ErrorCode::TilingMismatch, "empty tiling");
  for (const auto& r : tiling.regions())
    for (int j = 0; j < n; ++j)
      if (r.side(j) < sched.D1 || r.side(j) > sched.D1 + 1)
        throw Error(ErrorCode::TilingMismatch,
                    "region " + to_string(r) + " side " + str(r.side(j)) + " not in {D1, D1+1} = {" + str(sched.D1) +
                        "," + str(sched.D1 + 1) + "}");
}

}  // namespace

std::vector<std::string> cross_region_violations(const Tiling& tiling, const std::vector<PackageFamily>& families,
                                                 const std::vector<Coord>& d) {
  std::vector<std::string> out;
  const Coord reach = d.size() > 1 ? d[1] : 0;
  for (std::size_t k = 0; k < tiling.size(); ++k) {
    const auto& F = families[k];
    for (const auto& nb : tiling.near(static_cast<int>(k), reach)) {
      const auto& G = families[nb.region];
      for (std::size_t i = 0; i < F.rounds.size(); ++i)
        for (std::size_t j = 0; j < G.rounds.size(); ++j) {
          const Coord need = d[std::max(i, j) + 1];
          for (const auto& P : F.rounds[i].packages)
            for (const auto& Q0 : G.rounds[j].packages) {
              const Rect Q = Q0.translated(nb.shift);
              const Coord dist = rect_distance(P, Q);
              if (dist < need)
                out.push_back("(vii) " + to_string(P) + " (round " + str(static_cast<Coord>(i + 1)) + ") and " +
                              to_string(Q) + " (round " + str(static_cast<Coord>(j + 1)) + ") at distance " +
                              str(dist) + " < " + str(need));
            }
        }
    }
  }
  return out;
}

ShiftResult strong_shift_build(const Tiling& tiling, const ShiftSchedule& sched, const PackageMarker& fill,
                               const RegionFilter& keep) {
  require_tiling(tiling, sched);
  const int n = sched.rect.n;
  const auto& d = sched.rect.d;
  ShiftResult res;
  res.schedule = schedule_regions(tiling, sched.D1);
  res.families.resize(tiling.size());
  std::vector<std::vector<Neighbor>> around(tiling.size());
  for (std::size_t k = 0; k < tiling.size(); ++k) {
    res.families[k].region = tiling[k];
    around[k] = tiling.near(static_cast<int>(k), d[1]);
  }

  for (int a = 0; a < n; ++a) {
    const Coord da = d[a + 1];
    for (const auto& step : res.schedule.steps)
      for (int k : step) {
        const Rect& R = tiling[k];
        // packages already placed next door, in R's coordinates
        std::vector<Rect> foreign;
        for (const auto& nb : around[k])
          for (const auto& round : res.families[nb.region].rounds)
            for (const auto& P : round.packages) {
              Rect Q = P.translated(nb.shift);
              if (rect_distance(Q, R) < da) foreign.push_back(std::move(Q));
            }
        RoundOptions opt;
        opt.d = da;
        opt.thickness = sched.rect.thickness;
        opt.relaxed = true;
        for (const auto& Q : foreign)
          if (auto iv = intersect(Q.interval(a), R.interval(a))) opt.avoid.push_back(*iv);
        opt.special_ok = [&foreign, da](const Rect& S) {
          for (const auto& Q : foreign)
            if (rect_distance(S, Q) < da) return false;
          return true;
        };
        auto& fam = res.families[k];
        if (a == 0) {
          fam.rounds.push_back(first_round(R, opt));
        } else {
          std::vector<Rect> earlier;
          for (const auto& round : fam.rounds) earlier.insert(earlier.end(), round.packages.begin(), round.packages.end());
          fam.rounds.push_back(next_round(R, a, earlier, opt));
        }
      }
  }

  std::vector<Coord> half(n, sched.D1 / 2);
  for (const auto& fam : res.families) {
    const auto bad = family_violations(fam, d, sched.N, sched.rect.thickness, half);
    if (!bad.empty()) throw Error(ErrorCode::InternalInvariant, "region " + to_string(fam.region) + ": " + bad.front());
  }
  const auto cross = cross_region_violations(tiling, res.families, d);
  if (!cross.empty()) throw Error(ErrorCode::InternalInvariant, cross.front());

  const World& w = tiling.world();
  res.markers = MarkerSet(n, sched.rect.d0);
  for (std::size_t k = 0; k < tiling.size(); ++k) {
    if (keep && !keep(static_cast<int>(k))) continue;
    for (const auto& round : res.families[k].rounds)
      for (const auto& P : round.packages) fill(P, round.axis, res.markers);
  }
  if (w.is_torus()) {
    MarkerSet wrapped(n, sched.rect.d0);
    wrapped.reserve(res.markers.size());
    Point x(n);
    for (std::size_t p = 0; p < res.markers.size(); ++p) {
      auto y = res.markers[p];
      for (int j = 0; j < n; ++j) x[j] = floor_mod(y[j], w.L[j]);
      wrapped.add(x);
    }
    res.markers = std::move(wrapped);
  }
  res.markers.normalize();
  return res;
}

MarkerSet strong_shift_markers(const Tiling& tiling, const ShiftSchedule& sched) {
  const Coord d0 = sched.rect.d0;
  auto res = strong_shift_build(tiling, sched, [d0](const Rect& p, int axis, MarkerSet& out) {
    append_axis_marker(p, axis, d0, out);
  });
  for (int i = 0; i < sched.rect.n; ++i) res.markers.bounds.push_back({str(i + 1), sched.D, sched.D});
  return std::move(res.markers);
}

MarkerSet strong_shift_markers_multiples(const Tiling& tiling, const ShiftSchedule& sched, const AlphaTable& table) {
  const int n = sched.rect.n;
  const AlphaTable t = normalize_alpha_table(table, n);
  if (sched.rect.thickness < multiples_thickness(n, sched.rect.d0, t))
    throw Error(ErrorCode::InvalidArgument, "schedule thickness below the multiples requirement");
  const Coord d0 = sched.rect.d0;
  auto res = strong_shift_build(tiling, sched, [d0, &t](const Rect& p, int axis, MarkerSet& out) {
    append_multi_alpha_marker(p, axis, d0, t[axis], out);
  });
  for (int i = 0; i < n; ++i)
    for (Coord a : t[i]) {
      Point g(n, 0);
      g[i] = a;
      res.markers.bounds.push_back({to_string(g), sched.D, sched.D});
    }
  return std::move(res.markers);
}

// ---------------------------------------------------------------- general generators

GeneratorSet classify_generators(int n, const std::vector<Point>& gens) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  GeneratorSet S;
  S.n = n;
  S.axis.assign(n, {});
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != n) throw Error(ErrorCode::DimensionMismatch, "generator of wrong dimension");
    int support = 0, axis = -1;
    for (int j = 0; j < n; ++j)
      if (g[j] != 0) ++support, axis = j;
    if (support == 0) throw Error(ErrorCode::InvalidArgument, "zero generator");
    S.all.push_back(g);
    if (support == n && n > 1) {
      S.diagonal.push_back(g);
    } else if (support == 1) {
      auto& row = S.axis[axis];
      if (std::find(row.begin(), row.end(), g[axis]) == row.end()) row.push_back(g[axis]);
    } else {
      throw Error(ErrorCode::UnsupportedGenerator,
                  "generator " + to_string(g) + " has support " + str(support) + ", neither 1 nor " + str(n));
    }
  }
  S.axis = normalize_alpha_table(S.axis, n);
  return S;
}

GeneralParams general_parameters(int n, Coord d0, const std::vector<Point>& gens, bool paper_schedule) {
  GeneralParams p;
  p.S = classify_generators(n, gens);
  p.d0 = d0;
  if (paper_schedule) {
    RectSchedule r = paper_rect_schedule(n, d0);
    r.thickness = std::max(r.thickness, multiples_thickness(n, d0, p.S.axis));
    if (!rect_schedule_violations(r).empty())
      throw Error(ErrorCode::InvalidArgument, "paper schedule too thin for these multiples");
    p.sched = shift_schedule_from(r);
  } else {
    // never thinner than the plain construction, so unit steps reproduce it
    const Coord tau = std::max(default_thickness(n, d0), multiples_thickness(n, d0, p.S.axis));
    p.sched = shift_schedule_from(minimal_rect_schedule(n, d0, tau));
  }
  const Coord D1 = p.sched.D1;
  p.filtration.mu.push_back(2 * D1);
  p.filtration.delta.push_back(0);
  Coord vsum = 0;
  for (const auto& v : p.S.diagonal) {
    const Coord delta = to_coord(slanted_delta(n, d0, v));
    p.filtration.delta.push_back(delta);
    p.filtration.mu.push_back(checked_add(p.filtration.mu.back(), delta));
    vsum = checked_add(vsum, norm(v));
  }
  p.lower = checked_mul(checked_mul(checked_pow(2, n + 1), checked_add(p.filtration.mu.back(), 1)), vsum);
  p.q = p.lower / D1 + 1;
  if (p.q % 2) ++p.q;
  p.Delta = checked_mul(p.q, D1);
  p.Delta_t = checked_mul(p.q, D1 + 1) - 1;
  p.B = checked_add(checked_mul(2, p.Delta_t), 1);
  return p;
}

World general_torus(const GeneralParams& p, Coord classes, bool extra) {
  if (classes < 1) throw Error(ErrorCode::InvalidArgument, "need at least one class per axis");
  const int n = p.S.n;
  std::vector<Coord> L(n, checked_mul(classes, p.Delta_t + 1));
  if (extra)
    for (auto& l : L) ++l;
  return World::torus(L);
}

namespace {

// q bricks of D_1+1 cells; a class with one extra cell widens one brick.
std::vector<Interval> brick_parts(Interval iv, Coord q, Coord D1, std::uint64_t pick) {
  const Coord cells = iv.length() + 1;
  const Coord extra = cells - q * (D1 + 1);
  if (extra < 0 || extra > 1) throw Error(ErrorCode::InternalInvariant, "class interval does not split into bricks");
  const Coord wide = extra ? static_cast<Coord>(pick % static_cast<std::uint64_t>(q)) : -1;
  std::vector<Interval> out;
  Coord c = iv.lo;
  for (Coord b = 0; b < q; ++b) {
    const Coord len = D1 + 1 + (b == wide ? 1 : 0);
    out.push_back({c, c + len - 1});
    c += len;
  }
  return out;
}

}  // namespace

GeneralResult general_markers(const World& world, const GeneralParams& p, TilingStyle style, std::uint64_t seed) {
  const int n = p.S.n;
  if (world.n != n) throw Error(ErrorCode::DimensionMismatch, "world dimension differs from the generators");
  const Coord D1 = p.sched.D1;
  GeneralResult res;
  try {
    res.coarse = build_tiling(world, p.Delta_t, style, seed);
  } catch (const Error& e) {
    throw Error(ErrorCode::WorldTooSmall, std::string("world cannot be tiled at scale Delta: ") + e.what());
  }
  SplitMix rng(seed ^ 0x5bd1e995ULL);
  std::vector<Rect> bricks;
  for (std::size_t c = 0; c < res.coarse.size(); ++c) {
    const Rect& C = res.coarse[c];
    std::vector<std::vector<Interval>> axes(n);
    for (int j = 0; j < n; ++j) axes[j] = brick_parts(C.interval(j), p.q, D1, rng.next());
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<Interval> sides(n);
      bool upper = false;
      for (int j = 0; j < n; ++j) {
        sides[j] = axes[j][idx[j]];
        upper = upper || sides[j].hi == C.hi(j);
      }
      bricks.push_back(Rect::from_intervals(sides));
      res.brick_class.push_back(static_cast<int>(c));
      res.in_X.push_back(upper);
      int j = n - 1;
      while (j >= 0 && ++idx[j] == axes[j].size()) idx[j--] = 0;
      if (j < 0) break;
    }
  }
  res.bricks = Tiling(world, std::move(bricks));

  const Coord d0 = p.d0;
  const AlphaTable& table = p.S.axis;
  auto built = strong_shift_build(
      res.bricks, p.sched,
      [d0, &table](const Rect& pk, int axis, MarkerSet& out) { append_multi_alpha_marker(pk, axis, d0, table[axis], out); },
      [&res](int k) { return static_cast<bool>(res.in_X[k]); });
  res.markers = std::move(built.markers);

  const auto& mu = p.filtration.mu;
  MarkerSet diag(n, d0);
  for (std::size_t c = 0; c < res.coarse.size(); ++c) {
    std::vector<Rect> K;
    if (!p.S.diagonal.empty())
      for (Coord m : mu) K.push_back(core(res.coarse[c], m));
    for (std::size_t k = 0; k < p.S.diagonal.size(); ++k) {
      auto cp = corner_packages(K[k + 1], p.S.diagonal[k], d0);
      diag.append(cp.markers);
    }
    res.cores.push_back(std::move(K));
  }
  Point x(n);
  for (std::size_t q = 0; q < diag.size(); ++q) {
    auto y = diag[q];
    for (int j = 0; j < n; ++j) x[j] = world.is_torus() ? floor_mod(y[j], world.L[j]) : y[j];
    res.markers.add(x);
  }
  res.markers.normalize();
  res.markers.bounds.clear();
  for (const auto& g : p.S.all) res.markers.bounds.push_back({to_string(g), p.B, p.B});
  return res;
}

// ----------------------------------------------------------------- core hitting check

Report hitting_check(const Tiling& coarse, const Point& v, Coord delta, Coord Delta) {
  const World& w = coarse.world();
  const int n = w.n;
  if (static_cast<int>(v.size()) != n) throw Error(ErrorCode::DimensionMismatch, "direction of wrong dimension");
  for (Coord c : v)
    if (c == 0) throw Error(ErrorCode::DegenerateDirection, "direction has a zero coordinate");
  if (!w.is_torus()) throw Error(ErrorCode::WrongMode, "core hitting is checked on tori");
  Report r;
  r.check = "core_hitting(" + to_string(v) + ")";
  r.bound = Delta / 2;

  // pivot axis: its orbit length is a multiple of every other one
  std::vector<Coord> order(n);
  for (int k = 0; k < n; ++k) order[k] = w.L[k] / std::gcd(floor_mod(v[k], w.L[k]), w.L[k]);
  int pivot = -1;
  for (int j = 0; j < n && pivot < 0; ++j) {
    bool ok = true;
    for (int k = 0; k < n; ++k) ok = ok && order[j] % order[k] == 0;
    if (ok) pivot = j;
  }
  if (pivot < 0) throw Error(ErrorCode::InvalidArgument, "torus periods admit no pivot axis for this direction");
  const Coord P = order[pivot];
  const Coord gp = w.L[pivot] / P;

  std::vector<Interval> box;
  for (int j = 0; j < n; ++j) box.push_back(j == pivot ? Interval{0, gp - 1} : Interval{0, w.L[j] - 1});
  std::vector<Coord> rep(n);
  for (int j = 0; j < n; ++j) rep[j] = box[j].lo;
  std::vector<Interval> hits;
  Point x(n);
  while (true) {
    // walk one orbit region by region
    hits.clear();
    Coord t = 0;
    while (t < P) {
      for (int j = 0; j < n; ++j) x[j] = rep[j] + t * v[j];
      const int k = coarse.region_of(x);
      const Rect C = coarse.copy_containing(k, x);
      Coord exit = kInfinity;
      for (int j = 0; j < n; ++j)
        exit = std::min(exit, v[j] > 0 ? floor_div(C.hi(j) - x[j], v[j]) : floor_div(x[j] - C.lo(j), -v[j]));
      bool has_core = true;
      for (int j = 0; j < n; ++j) has_core = has_core && C.side(j) > 2 * delta;
      if (has_core) {
        Coord lo = 0, hi = exit;
        for (int j = 0; j < n; ++j) {
          const Coord a = C.lo(j) + delta, b = C.hi(j) - delta;
          if (v[j] > 0) {
            lo = std::max(lo, ceil_div(a - x[j], v[j]));
            hi = std::min(hi, floor_div(b - x[j], v[j]));
          } else {
            lo = std::max(lo, ceil_div(x[j] - b, -v[j]));
            hi = std::min(hi, floor_div(x[j] - a, -v[j]));
          }
        }
        if (lo <= hi) hits.push_back({t + lo, t + hi});
      }
      t += exit + 1;
    }
    r.checked += static_cast<std::uint64_t>(P);
    Coord worst = kInfinity;
    Coord at = 0;
    if (!hits.empty()) {
      worst = 0;
      for (std::size_t h = 0; h < hits.size(); ++h) {
        const Coord end = hits[h].hi;
        const Coord next = h + 1 < hits.size() ? hits[h + 1].lo : hits[0].lo + P;
        const Coord gap = next - end;
        if (gap / 2 > worst) worst = gap / 2, at = end + gap / 2;
      }
    }
    r.worst = std::max(r.worst, worst);
    if (worst > Delta / 2) {
      Point c(n);
      for (int j = 0; j < n; ++j) c[j] = floor_mod(rep[j] + (worst == kInfinity ? 0 : at) * v[j], w.L[j]);
      r.fail({c}, worst == kInfinity ? "orbit never meets a core"
                                     : "cell " + str(worst) + " steps from the nearest core");
    }
    int j = n - 1;
    while (j >= 0 && ++rep[j] > box[j].hi) rep[j] = box[j].lo, --j;
    if (j < 0) break;
  }
  r.worst_b = r.worst;
  return r;
}

}  // namespace strongmark
