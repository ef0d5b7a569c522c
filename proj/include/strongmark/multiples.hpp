#pragma once

// Markers hit by arithmetic progressions of step alpha along an axis, for one
// step or several at once, and the rectangle construction built on them.
//
// Length requirements here count lattice points: a block that needs D(n,d,a)
// points has side D(n,d,a) - 1.

#include <vector>

#include "strongmark/rect_markers.hpp"

namespace strongmark {

/// Per axis, the non-zero steps that must hit the marker set.
using AlphaTable = std::vector<std::vector<Coord>>;

/// Pads empty axes with {1}; throws InvalidArgument on a zero step.
AlphaTable normalize_alpha_table(AlphaTable table, int n);

/// 2|a| d^n - d + (|a|-1)^2.
Coord D_single(int n, Coord d, Coord alpha);

/// c in [0, |a|-1] with 2 d^n + c = 1 mod |a|.
Coord alpha_offset(int n, Coord d, Coord alpha);

/// |a| translates of the one-direction marker, stride 2 d^n + c.
MarkerSet multiple_marker(const Rect& r, int axis, Coord d, Coord alpha);
void append_multiple_marker(const Rect& r, int axis, Coord d, Coord alpha, MarkerSet& out);

/// Points needed along the axis for several steps: (m-1)d + sum D(n,d,a_j).
Coord multi_alpha_points(int n, Coord d, const std::vector<Coord>& alphas);

/// Consecutive blocks of D(n,d,a_j) points separated by d-1 free points.
MarkerSet multi_alpha_marker(const Rect& r, int axis, Coord d, const std::vector<Coord>& alphas);
void append_multi_alpha_marker(const Rect& r, int axis, Coord d, const std::vector<Coord>& alphas, MarkerSet& out);

/// Package thickness for a table: the largest multi_alpha_points - 1.
Coord multiples_thickness(int n, Coord d0, const AlphaTable& table);

RectSchedule minimal_multiples_schedule(int n, Coord d0, const AlphaTable& table);

/// The round-by-round rectangle construction with multi-step packages.
/// Requires sched.thickness >= multiples_thickness(...).
RectResult strong_rect_markers_multiples(const Rect& r, const RectSchedule& sched, const AlphaTable& table);

}  // namespace strongmark
