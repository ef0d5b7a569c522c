#include "strongmark/multiples.hpp"

#include <cstdlib>

namespace strongmark {

AlphaTable normalize_alpha_table(AlphaTable table, int n) {
  if (static_cast<int>(table.size()) > n) throw Error(ErrorCode::InvalidArgument, "alpha table has too many axes");
  table.resize(n);
  for (auto& row : table) {
    if (row.empty()) row.push_back(1);
    for (Coord a : row)
      if (a == 0) throw Error(ErrorCode::InvalidArgument, "alpha must be non-zero");
  }
  return table;
}

Coord D_single(int n, Coord d, Coord alpha) {
  if (alpha == 0) throw Error(ErrorCode::InvalidArgument, "alpha must be non-zero");
  const Coord a = std::llabs(alpha);
  return checked_add(checked_add(checked_mul(checked_mul(2, a), checked_pow(d, n)), -d), checked_mul(a - 1, a - 1));
}

Coord alpha_offset(int n, Coord d, Coord alpha) {
  const Coord a = std::llabs(alpha);
  const Coord base = floor_mod(checked_mul(2, checked_pow(d, n)), a);
  return floor_mod(1 - base, a);
}

void append_multiple_marker(const Rect& r, int axis, Coord d, Coord alpha, MarkerSet& out) {
  const int n = r.dim();
  const Coord a = std::llabs(alpha);
  const Coord stride = checked_add(checked_mul(2, checked_pow(d, n)), alpha_offset(n, d, alpha));
  const Coord width = axis_marker_min_side(n, d);  // R_0 holds 2d^n - d points
  for (Coord t = 0; t < a; ++t) {
    const Coord lo = r.lo(axis) + t * stride;
    append_axis_marker(r.with_interval(axis, {lo, lo + width - 1}), axis, d, out);
  }
}

MarkerSet multiple_marker(const Rect& r, int axis, Coord d, Coord alpha) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "spacing must be positive");
  if (axis < 0 || axis >= r.dim()) throw Error(ErrorCode::InvalidArgument, "axis out of range");
  const Coord need = D_single(r.dim(), d, alpha);
  if (r.side(axis) + 1 < need)
    throw Error(ErrorCode::TooThin, "axis " + std::to_string(axis + 1) + " holds " + std::to_string(r.side(axis) + 1) +
                                        " points, need " + std::to_string(need));
  MarkerSet out(r.dim(), d);
  append_multiple_marker(r, axis, d, alpha, out);
  out.normalize();
  return out;
}

Coord multi_alpha_points(int n, Coord d, const std::vector<Coord>& alphas) {
  if (alphas.empty()) throw Error(ErrorCode::InvalidArgument, "empty alpha list");
  Coord total = checked_mul(static_cast<Coord>(alphas.size()) - 1, d);
  for (Coord a : alphas) total = checked_add(total, D_single(n, d, a));
  return total;
}

void append_multi_alpha_marker(const Rect& r, int axis, Coord d, const std::vector<Coord>& alphas, MarkerSet& out) {
  Coord at = r.lo(axis);
  for (Coord a : alphas) {
    const Coord size = D_single(r.dim(), d, a);
    append_multiple_marker(r.with_interval(axis, {at, at + size - 1}), axis, d, a, out);
    at += size + d - 1;  // d-1 free points keep neighbouring blocks d apart
  }
}

MarkerSet multi_alpha_marker(const Rect& r, int axis, Coord d, const std::vector<Coord>& alphas) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "spacing must be positive");
  if (axis < 0 || axis >= r.dim()) throw Error(ErrorCode::InvalidArgument, "axis out of range");
  const Coord need = multi_alpha_points(r.dim(), d, alphas);
  if (r.side(axis) + 1 < need)
    throw Error(ErrorCode::TooThin, "axis " + std::to_string(axis + 1) + " holds " + std::to_string(r.side(axis) + 1) +
                                        " points, need " + std::to_string(need));
  MarkerSet out(r.dim(), d);
  append_multi_alpha_marker(r, axis, d, alphas, out);
  out.normalize();
  return out;
}

Coord multiples_thickness(int n, Coord d0, const AlphaTable& table) {
  Coord best = 0;
  for (const auto& row : table) best = std::max(best, multi_alpha_points(n, d0, row) - 1);
  return best;
}

RectSchedule minimal_multiples_schedule(int n, Coord d0, const AlphaTable& table) {
  return minimal_rect_schedule(n, d0, multiples_thickness(n, d0, normalize_alpha_table(table, n)));
}

RectResult strong_rect_markers_multiples(const Rect& r, const RectSchedule& sched, const AlphaTable& table) {
  const auto t = normalize_alpha_table(table, sched.n);
  const Coord need = multiples_thickness(sched.n, sched.d0, t);
  if (sched.thickness < need)
    throw Error(ErrorCode::InvalidArgument, "schedule thickness " + std::to_string(sched.thickness) +
                                                " below the multi-step requirement " + std::to_string(need));
  const Coord d0 = sched.d0;
  return strong_rect_markers_with(r, sched, [&t, d0](const Rect& p, int axis, MarkerSet& out) {
    append_multi_alpha_marker(p, axis, d0, t[axis], out);
  });
}

}  // namespace strongmark
