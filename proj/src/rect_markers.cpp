#include "strongmark/rect_markers.hpp"

#include <algorithm>
#include <sstream>

namespace strongmark {

namespace {

std::string str(Coord v) { return std::to_string(v); }

// Near-equal split of [lo, hi] into `parts` pieces by point count, larger first.
std::vector<Interval> split_even(Interval iv, Coord parts) {
  const Coord points = iv.length() + 1;
  parts = std::clamp<Coord>(parts, 1, points);
  const Coord base = points / parts;
  const Coord extra = points % parts;
  std::vector<Interval> out;
  Coord at = iv.lo;
  for (Coord k = 0; k < parts; ++k) {
    const Coord size = base + (k < extra ? 1 : 0);
    out.push_back({at, at + size - 1});
    at += size;
  }
  return out;
}

// Cartesian product of per-axis interval lists, lexicographic in axis order.
std::vector<Rect> product(const std::vector<std::vector<Interval>>& axes) {
  std::vector<Rect> out;
  const int n = static_cast<int>(axes.size());
  for (const auto& a : axes)
    if (a.empty()) return out;
  std::vector<std::size_t> idx(n, 0);
  std::vector<Interval> cur(n);
  while (true) {
    for (int j = 0; j < n; ++j) cur[j] = axes[j][idx[j]];
    out.push_back(Rect::from_intervals(cur));
    int j = n - 1;
    while (j >= 0 && ++idx[j] == axes[j].size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

// Splits every side of `piece` (a sigma_axis image of region) so no side
// exceeds floor(w/4)+1, w being the region's side along the same axis.
std::vector<Rect> subdivide(const Rect& piece, const Rect& region, int dropped) {
  std::vector<std::vector<Interval>> axes;
  for (int j = 0; j < piece.dim(); ++j) {
    const int orig = j < dropped ? j : j + 1;
    const Coord bound = region.side(orig) / 4 + 1;
    const Coord points = piece.side(j) + 1;
    const Coord parts = (points + bound) / (bound + 1);  // ceil(points / (bound+1))
    axes.push_back(split_even(piece.interval(j), parts));
  }
  return product(axes);
}

}  // namespace

Coord default_thickness(int n, Coord d0) { return checked_add(checked_mul(2, checked_pow(d0, n)), -d0); }

std::vector<Coord> rect_package_counts(int n) {
  std::vector<Coord> N(n + 1, 0);
  const Coord four = checked_pow(4, n - 1);
  N[1] = four;
  for (int i = 1; i < n; ++i)
    N[i + 1] = checked_add(checked_add(checked_mul(four, checked_pow(2 * N[i] + 1, n - 1)), 2 * N[i]), 1);
  return N;
}

namespace {

RectSchedule finish(int n, Coord d0, std::vector<Coord> d, Coord thickness, std::string kind) {
  RectSchedule s;
  s.n = n;
  s.d0 = d0;
  s.d = std::move(d);
  s.N = rect_package_counts(n);
  s.D0 = checked_mul(checked_mul(4, s.N[n]), s.d[1]);
  s.thickness = thickness;
  s.kind = std::move(kind);
  return s;
}

void check_args(int n, Coord d0) {
  if (n < 1 || d0 < 1) throw Error(ErrorCode::InvalidArgument, "schedule needs n, d0 >= 1");
}

}  // namespace

RectSchedule paper_rect_schedule(int n, Coord d0) {
  check_args(n, d0);
  std::vector<Coord> d(n + 1);
  d[0] = d0;
  d[n] = checked_mul(6 * n, checked_pow(d0, n));
  for (int i = n - 1; i >= 1; --i) d[i] = checked_mul(6 * n, d[i + 1]);
  return finish(n, d0, std::move(d), default_thickness(n, d0), "paper");
}

RectSchedule minimal_rect_schedule(int n, Coord d0, Coord thickness) {
  check_args(n, d0);
  if (thickness < 0) thickness = default_thickness(n, d0);
  std::vector<Coord> d(n + 1);
  d[0] = d0;
  d[n] = checked_add(thickness, 1);
  for (int i = n - 1; i >= 1; --i) d[i] = checked_add(checked_mul(5 * (n - i), d[i + 1]), 1);
  return finish(n, d0, std::move(d), thickness, "minimal");
}

RectSchedule custom_rect_schedule(int n, Coord d0, std::vector<Coord> d, Coord thickness) {
  check_args(n, d0);
  if (static_cast<int>(d.size()) == n) d.insert(d.begin(), d0);
  if (static_cast<int>(d.size()) != n + 1) throw Error(ErrorCode::InvalidArgument, "custom schedule needs d_1..d_n");
  d[0] = d0;
  if (thickness < 0) thickness = default_thickness(n, d0);
  auto s = finish(n, d0, std::move(d), thickness, "custom");
  auto bad = rect_schedule_violations(s);
  if (!bad.empty()) throw Error(ErrorCode::InvalidArgument, bad.front());
  return s;
}

std::vector<std::string> rect_schedule_violations(const RectSchedule& s) {
  std::vector<std::string> out;
  const int n = s.n;
  if (n < 1 || static_cast<int>(s.d.size()) != n + 1 || static_cast<int>(s.N.size()) != n + 1) {
    out.push_back("schedule arrays do not match n");
    return out;
  }
  if (!(s.thickness < s.d[n])) out.push_back("thickness " + str(s.thickness) + " must be < d_n = " + str(s.d[n]));
  for (int i = 1; i < n; ++i) {
    if (!(s.d[i] > s.d[i + 1])) out.push_back("d_" + str(i) + " must exceed d_" + str(i + 1));
    if (!(s.d[i] > 5 * (n - i) * s.d[i + 1]))
      out.push_back("d_" + str(i) + " = " + str(s.d[i]) + " must exceed 5(n-i)d_" + str(i + 1));
  }
  const auto N = rect_package_counts(n);
  if (N != s.N) out.push_back("N recurrence mismatch");
  if (s.D0 != 4 * s.N[n] * s.d[1]) out.push_back("D0 != 4 N_n d_1");
  return out;
}

Coord axis_marker_min_side(int n, Coord d) { return checked_add(checked_mul(2, checked_pow(d, n)), -d); }

void append_axis_marker(const Rect& r, int axis, Coord d, MarkerSet& out) {
  const int n = r.dim();
  // Weights 2 d^{k-1} for the k-th coordinate (k = 2..n) in the axis-first order.
  std::vector<int> others;
  for (int j = 0; j < n; ++j)
    if (j != axis) others.push_back(j);
  std::vector<Coord> weight(others.size());
  Coord w = 2 * d;
  for (std::size_t k = 0; k < others.size(); ++k) {
    weight[k] = w;
    if (k + 1 < others.size()) w = checked_mul(w, d);
  }
  Point x(r.lo());
  while (true) {
    Coord offset = 0;
    for (std::size_t k = 0; k < others.size(); ++k) offset += ((x[others[k]] - r.lo(others[k])) % d) * weight[k];
    x[axis] = r.lo(axis) + offset;
    out.add(x);
    // odometer over the other axes
    int k = static_cast<int>(others.size()) - 1;
    while (k >= 0) {
      const int j = others[k];
      if (x[j] < r.hi(j)) {
        ++x[j];
        break;
      }
      x[j] = r.lo(j);
      --k;
    }
    if (k < 0) break;
  }
}

MarkerSet axis_marker(const Rect& r, int axis, Coord d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "spacing must be positive");
  if (axis < 0 || axis >= r.dim()) throw Error(ErrorCode::InvalidArgument, "axis out of range");
  const Coord need = axis_marker_min_side(r.dim(), d);
  if (r.side(axis) < need)
    throw Error(ErrorCode::TooThin, "side " + str(r.side(axis)) + " along axis " + str(axis + 1) + " < " + str(need));
  MarkerSet out(r.dim(), d);
  append_axis_marker(r, axis, d, out);
  out.normalize();
  return out;
}

std::vector<Interval> space_intervals_relaxed(const Interval& I, const std::vector<Interval>& J, Coord d,
                                              std::size_t k) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "spacing must be positive");
  std::vector<Interval> out;
  if (k == 0) return out;
  const Coord run = 3 * d;
  const Coord runs = (I.length() + 1) / run;
  for (Coord r = 0; r < runs && out.size() < k; ++r) {
    const Interval block{I.lo + r * run, I.lo + r * run + run - 1};
    bool clean = true;
    for (const auto& j : J)
      if (intersect(block, j)) {
        clean = false;
        break;
      }
    if (clean) out.push_back({block.lo + d, block.lo + 2 * d});
  }
  if (out.size() < k)
    throw Error(ErrorCode::TooShort, "only " + str(static_cast<Coord>(out.size())) + " clean runs of " + str(run) +
                                         " points for " + str(static_cast<Coord>(k)) + " intervals in [" + str(I.lo) +
                                         "," + str(I.hi) + "]");
  return out;
}

std::vector<Interval> space_intervals(const Interval& I, const std::vector<Interval>& J, Coord d, std::size_t k) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "spacing must be positive");
  for (const auto& j : J)
    if (j.length() > d) throw Error(ErrorCode::InvalidArgument, "avoided interval longer than d");
  const Coord need = checked_mul(3 * d, 2 * static_cast<Coord>(J.size()) + static_cast<Coord>(k) + 1);
  if (I.length() < need) throw Error(ErrorCode::TooShort, "interval length " + str(I.length()) + " < " + str(need));
  return space_intervals_relaxed(I, J, d, k);
}

std::vector<Rect> package_in_direction(const Rect& r, int axis, std::vector<Rect> P, const std::vector<Interval>& J,
                                       Coord d, bool relaxed) {
  if (axis < 0 || axis >= r.dim()) throw Error(ErrorCode::InvalidArgument, "axis out of range");
  const Rect base = drop_axis(r, axis);
  for (const auto& p : P) {
    if (p.dim() != base.dim()) throw Error(ErrorCode::DimensionMismatch, "package base of wrong dimension");
    if (!base.contains(p)) throw Error(ErrorCode::InvalidArgument, "package base outside the rectangle");
  }
  std::sort(P.begin(), P.end());
  if (!relaxed && P.size() <= 4096) {
    for (std::size_t a = 0; a < P.size(); ++a)
      for (std::size_t b = a + 1; b < P.size(); ++b)
        if (P[a].intersects(P[b])) throw Error(ErrorCode::InvalidArgument, "package bases overlap");
  }
  const auto K = relaxed ? space_intervals_relaxed(r.interval(axis), J, d, P.size())
                         : space_intervals(r.interval(axis), J, d, P.size());
  std::vector<Rect> out;
  out.reserve(P.size());
  for (std::size_t k = 0; k < P.size(); ++k) out.push_back(P[k].insert_axis(axis, K[k]));
  return out;
}

std::vector<Rect> rect_minus_rects(const Rect& r, const std::vector<Rect>& S) {
  const int n = r.dim();
  for (const auto& s : S)
    if (s.dim() != n) throw Error(ErrorCode::DimensionMismatch, "subtracted rect of wrong dimension");
  std::vector<std::vector<Interval>> axes(n);
  for (int j = 0; j < n; ++j) {
    std::vector<Coord> cuts{r.lo(j), r.hi(j) + 1};
    for (const auto& s : S) {
      cuts.push_back(std::clamp(s.lo(j), r.lo(j), r.hi(j) + 1));
      cuts.push_back(std::clamp(s.hi(j) + 1, r.lo(j), r.hi(j) + 1));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) axes[j].push_back({cuts[k], cuts[k + 1] - 1});
  }
  std::vector<Rect> out;
  for (auto& cell : product(axes)) {
    bool covered = false;
    for (const auto& s : S)
      if (s.contains(cell)) {
        covered = true;
        break;
      }
    if (!covered) out.push_back(std::move(cell));
  }
  return out;
}

std::vector<Rect> quarter(const Rect& r) {
  std::vector<std::vector<Interval>> axes;
  for (int j = 0; j < r.dim(); ++j) axes.push_back(split_even(r.interval(j), 4));
  return product(axes);
}

PackageRound first_round(const Rect& region, const RoundOptions& opt) {
  PackageRound out;
  out.axis = 0;
  out.d = opt.d;
  out.packages = package_in_direction(region, 0, quarter(drop_axis(region, 0)), opt.avoid, opt.d, opt.relaxed);
  return out;
}

PackageRound next_round(const Rect& region, int axis, const std::vector<Rect>& earlier, const RoundOptions& opt) {
  PackageRound out;
  out.axis = axis;
  out.d = opt.d;
  const Coord d = opt.d;
  const Coord tau = opt.thickness;
  const Interval span = region.interval(axis);
  std::vector<Interval> J = opt.avoid;
  std::vector<Rect> specials_sigma;
  for (const auto& P : earlier) {
    const Rect tube = *extension(P, 2 * d).clipped(region);
    const Interval above{P.hi(axis) + d, P.hi(axis) + d + tau};
    const Interval below{P.lo(axis) - d - tau, P.lo(axis) - d};
    std::optional<Rect> chosen;
    for (const auto& cand : {above, below}) {
      if (cand.lo < span.lo || cand.hi > span.hi) continue;
      Rect special = tube.with_interval(axis, cand);
      if (opt.special_ok && !opt.special_ok(special)) continue;
      chosen = std::move(special);
      break;
    }
    if (!chosen)
      throw Error(ErrorCode::InternalInvariant, "no room for the special package beside " + to_string(P) + " along axis " +
                                                    str(axis + 1));
    J.push_back(chosen->interval(axis));
    specials_sigma.push_back(drop_axis(*chosen, axis));
    out.tubes.push_back({P, tube, *chosen});
  }
  std::vector<Rect> pieces;
  for (const auto& piece : rect_minus_rects(drop_axis(region, axis), specials_sigma))
    for (auto& sub : subdivide(piece, region, axis)) pieces.push_back(std::move(sub));
  out.packages = package_in_direction(region, axis, std::move(pieces), J, d, opt.relaxed);
  for (const auto& t : out.tubes) out.packages.push_back(t.special);
  return out;
}

std::vector<std::string> family_violations(const PackageFamily& fam, const std::vector<Coord>& d,
                                           const std::vector<Coord>& N, Coord thickness,
                                           const std::vector<Coord>& half_bound) {
  std::vector<std::string> out;
  const Rect& R = fam.region;
  const int n = R.dim();
  std::size_t total = 0;
  for (std::size_t r = 0; r < fam.rounds.size(); ++r) {
    const auto& round = fam.rounds[r];
    const int a = round.axis;
    const Coord di = d[r + 1];
    const std::string tag = "round " + str(static_cast<Coord>(r + 1)) + ": ";
    const auto& pk = round.packages;
    // (i) the sigma images tile sigma_a(R): contained, disjoint, and counts add up.
    const Rect base = drop_axis(R, a);
    Coord cells = 0;
    bool cover_ok = true;
    std::vector<Rect> sig;
    for (const auto& p : pk) {
      if (!R.contains(p)) {
        out.push_back(tag + "package " + to_string(p) + " leaves the region");
        cover_ok = false;
      }
      sig.push_back(drop_axis(p, a));
      cells = checked_add(cells, sig.back().cell_count());
    }
    for (std::size_t x = 0; x < sig.size() && cover_ok; ++x)
      for (std::size_t y = x + 1; y < sig.size(); ++y)
        if (sig[x].intersects(sig[y])) {
          cover_ok = false;
          out.push_back(tag + "(i) projections overlap: " + to_string(sig[x]) + " and " + to_string(sig[y]));
          break;
        }
    if (cover_ok && cells != base.cell_count())
      out.push_back(tag + "(i) projections cover " + str(cells) + " of " + str(base.cell_count()) + " points");
    for (const auto& p : pk) {
      // (ii)
      const Coord len = p.side(a);
      if (len < thickness || len > di)
        out.push_back(tag + "(ii) length " + str(len) + " along axis " + str(a + 1) + " outside [" + str(thickness) +
                      "," + str(di) + "]");
      // (v)
      for (int j = 0; j < n; ++j)
        if (p.side(j) > half_bound[j])
          out.push_back(tag + "(v) side " + str(p.side(j)) + " along axis " + str(j + 1) + " exceeds " +
                        str(half_bound[j]));
    }
    // (iii)
    for (std::size_t x = 0; x < pk.size(); ++x)
      for (std::size_t y = x + 1; y < pk.size(); ++y) {
        const Coord dist = rect_distance(pk[x], pk[y]);
        if (dist < di)
          out.push_back(tag + "(iii) " + to_string(pk[x]) + " and " + to_string(pk[y]) + " at distance " + str(dist));
      }
    // (iv)
    for (std::size_t q = 0; q < r; ++q)
      for (const auto& p : pk)
        for (const auto& o : fam.rounds[q].packages) {
          const Coord dist = rect_distance(p, o);
          if (dist < di)
            out.push_back(tag + "(iv) " + to_string(p) + " and earlier " + to_string(o) + " at distance " + str(dist));
        }
    // (vi)
    total += pk.size();
    if (static_cast<Coord>(total) > N[r + 1])
      out.push_back(tag + "(vi) " + str(static_cast<Coord>(total)) + " packages exceed N = " + str(N[r + 1]));
  }
  return out;
}

RectResult strong_rect_markers_with(const Rect& r, const RectSchedule& sched, const PackageMarker& fill) {
  const int n = sched.n;
  if (r.dim() != n) throw Error(ErrorCode::DimensionMismatch, "rectangle dimension differs from schedule");
  for (int j = 0; j < n; ++j)
    if (r.side(j) < sched.D0)
      throw Error(ErrorCode::TooSmall, "side " + str(r.side(j)) + " along axis " + str(j + 1) + " < D0 = " + str(sched.D0));
  RectResult res;
  res.family.region = r;
  RoundOptions opt;
  opt.thickness = sched.thickness;
  opt.d = sched.d[1];
  // For n = 1 the bound D0 = 4 d_1 is below the 3d(2m+k+1) = 6 d_1 that the
  // interval spacing asks for; one clean run is all that is needed, so skip it.
  opt.relaxed = n == 1;
  res.family.rounds.push_back(first_round(r, opt));
  opt.relaxed = false;
  std::vector<Rect> earlier = res.family.rounds.back().packages;
  for (int i = 1; i < n; ++i) {
    opt.d = sched.d[i + 1];
    res.family.rounds.push_back(next_round(r, i, earlier, opt));
    const auto& fresh = res.family.rounds.back().packages;
    earlier.insert(earlier.end(), fresh.begin(), fresh.end());
  }
  std::vector<Coord> half(n);
  for (int j = 0; j < n; ++j) half[j] = r.side(j) / 2;
  const auto bad = family_violations(res.family, sched.d, sched.N, sched.thickness, half);
  if (!bad.empty()) throw Error(ErrorCode::InternalInvariant, bad.front());
  res.markers = MarkerSet(n, sched.d0);
  for (const auto& round : res.family.rounds)
    for (const auto& p : round.packages) fill(p, round.axis, res.markers);
  res.markers.normalize();
  return res;
}

RectResult strong_rect_markers(const Rect& r, const RectSchedule& sched) {
  const Coord d0 = sched.d0;
  return strong_rect_markers_with(r, sched, [d0](const Rect& p, int axis, MarkerSet& out) {
    append_axis_marker(p, axis, d0, out);
  });
}

}  // namespace strongmark
