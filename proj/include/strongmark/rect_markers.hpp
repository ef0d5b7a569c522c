#pragma once

// Packaging and spacing inside a single rectangle: one-direction markers,
// interval spacing, packages along an axis, rectangle-minus-rectangles, and
// the round-by-round package family that yields markers hit along every axis.

#include <functional>
#include <string>
#include <vector>

#include "strongmark/lattice.hpp"
#include "strongmark/marker_set.hpp"

namespace strongmark {

/// Constants for the rectangle construction. Index 0 of `d` holds d_0 and
/// index 0 of `N` is unused, so d[i], N[i] read like the recurrences.
struct RectSchedule {
  int n = 0;
  Coord d0 = 0;
  std::vector<Coord> d;
  std::vector<Coord> N;
  Coord D0 = 0;
  /// Least package length along its own axis. 2 d_0^n - d_0 for plain markers.
  Coord thickness = 0;
  std::string kind;
};

Coord default_thickness(int n, Coord d0);

/// N_1 = 4^{n-1}, N_{i+1} = 4^{n-1}(2N_i+1)^{n-1} + 2N_i + 1.
std::vector<Coord> rect_package_counts(int n);

RectSchedule paper_rect_schedule(int n, Coord d0);
/// Least d_i with thickness < d_n and d_i > 5(n-i) d_{i+1}.
RectSchedule minimal_rect_schedule(int n, Coord d0, Coord thickness = -1);
RectSchedule custom_rect_schedule(int n, Coord d0, std::vector<Coord> d, Coord thickness = -1);
/// Empty when every invariant holds; otherwise one message per failure.
std::vector<std::string> rect_schedule_violations(const RectSchedule& s);

/// Least side length along `axis` accepted by axis_marker.
Coord axis_marker_min_side(int n, Coord d);

/// One marker per e_axis-line, anchored at the low end of r along `axis`.
/// Throws TooThin when the side along `axis` is below 2d^n - d.
MarkerSet axis_marker(const Rect& r, int axis, Coord d);

/// Same points as axis_marker, appended to `out` without a size check.
void append_axis_marker(const Rect& r, int axis, Coord d, MarkerSet& out);

/// k well-spaced subintervals of I avoiding the members of J. Checks the
/// length precondition 3d(2m+k+1) and member lengths <= d.
std::vector<Interval> space_intervals(const Interval& I, const std::vector<Interval>& J, Coord d, std::size_t k);

/// The block procedure without precondition checks: splits I into runs of
/// 3d points from I.lo, takes the first k runs no member of J touches and
/// returns their middle thirds [s+d, s+2d]. Long J members are allowed.
/// Throws TooShort if fewer than k clean runs exist.
std::vector<Interval> space_intervals_relaxed(const Interval& I, const std::vector<Interval>& J, Coord d,
                                              std::size_t k);

/// Pairs each (n-1)-dimensional rectangle of P (sorted) with a spaced
/// interval along `axis` and returns the resulting n-dimensional packages,
/// in sorted-P order. `relaxed` skips the length precondition.
std::vector<Rect> package_in_direction(const Rect& r, int axis, std::vector<Rect> P, const std::vector<Interval>& J,
                                       Coord d, bool relaxed = false);

/// Grid decomposition of r by every cut line of the S's; the pieces outside
/// all S in lexicographic grid order.
std::vector<Rect> rect_minus_rects(const Rect& r, const std::vector<Rect>& S);

/// A special package and where it came from.
struct TubeRecord {
  Rect source;   // P in the earlier rounds
  Rect tube;     // points of the region within 2d of P
  Rect special;  // R_P
};

struct PackageRound {
  int axis = 0;
  Coord d = 0;
  std::vector<Rect> packages;  // the round's packages, regular ones first
  std::vector<TubeRecord> tubes;
};

struct PackageFamily {
  Rect region;
  std::vector<PackageRound> rounds;
};

/// Knobs the torus construction needs on top of the plain rectangle rounds.
struct RoundOptions {
  Coord d = 0;
  Coord thickness = 0;
  /// Extra intervals along the round's axis that regular packages must avoid.
  std::vector<Interval> avoid;
  /// Extra acceptance test for a candidate special package.
  std::function<bool(const Rect&)> special_ok;
  /// Skip the 3d(2m+k+1) check (extra intervals may be long).
  bool relaxed = false;
};

/// Splits each side of r into 4 near-equal parts (larger parts first).
std::vector<Rect> quarter(const Rect& r);

/// Round along axis 0: quarters of sigma_0(region) packaged along axis 0.
PackageRound first_round(const Rect& region, const RoundOptions& opt);

/// Round along `axis` given every earlier package Q: special packages
/// beside each member of Q, then regular packages over the rest.
PackageRound next_round(const Rect& region, int axis, const std::vector<Rect>& earlier, const RoundOptions& opt);

/// Checks hypotheses (i)-(vi) on a family, using only lattice primitives.
/// `d[i]` is the spacing of round i (1-based), `N[i]` the count bound and
/// `half_bound[j]` the largest permitted package side along axis j.
std::vector<std::string> family_violations(const PackageFamily& fam, const std::vector<Coord>& d,
                                           const std::vector<Coord>& N, Coord thickness,
                                           const std::vector<Coord>& half_bound);

using PackageMarker = std::function<void(const Rect& package, int axis, MarkerSet& out)>;

struct RectResult {
  MarkerSet markers;
  PackageFamily family;
};

/// Builds the package family on r and fills every package with markers.
/// Throws TooSmall when some side is below D0 and InternalInvariant when the
/// family fails its own hypothesis check.
RectResult strong_rect_markers(const Rect& r, const RectSchedule& sched);

/// Same skeleton with a caller-chosen per-package marker.
RectResult strong_rect_markers_with(const Rect& r, const RectSchedule& sched, const PackageMarker& fill);

}  // namespace strongmark
