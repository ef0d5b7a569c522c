#pragma once

// Integer-lattice geometry: points, generalized rectangles, the Chebyshev
// metric and the handful of rectangle operations everything else is built on.
//
// Convention used throughout the library: the length of [a, b] is b - a, so
// an interval of length l holds l + 1 lattice points.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "strongmark/error.hpp"

namespace strongmark {

using Coord = std::int64_t;
using Point = std::vector<Coord>;

/// Distance to an empty set.
inline constexpr Coord kInfinity = std::numeric_limits<Coord>::max();

Coord checked_add(Coord a, Coord b);
Coord checked_mul(Coord a, Coord b);
Coord checked_pow(Coord base, int exp);
Coord floor_div(Coord a, Coord b);
Coord ceil_div(Coord a, Coord b);
Coord floor_mod(Coord a, Coord m);

struct Interval {
  Coord lo = 0;
  Coord hi = 0;

  Coord length() const { return hi - lo; }
  bool contains(Coord x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Gap between two intervals: 0 when they meet, else the distance between
/// the nearest endpoints.
Coord interval_gap(const Interval& a, const Interval& b);

/// Gap between [a] and [b] on a cycle of length `period`.
Coord cyclic_gap(const Interval& a, const Interval& b, Coord period);

std::optional<Interval> intersect(const Interval& a, const Interval& b);

struct IntervalSet {
  int axis = 0;  // 0-based
  std::vector<Interval> intervals;
};

/// Generalized n-dimensional rectangle [lo_1, hi_1] x ... x [lo_n, hi_n]
/// with lo_i <= hi_i. Degenerate sides are allowed; `is_proper` demands
/// lo_i < hi_i everywhere. A 0-dimensional rectangle is the single point
/// of Z^0.
class Rect {
 public:
  Rect() = default;
  Rect(std::vector<Coord> lo, std::vector<Coord> hi);
  static Rect from_intervals(std::span<const Interval> sides);
  static Rect cube(int n, Coord lo, Coord hi);
  static Rect point(const Point& p);

  int dim() const { return static_cast<int>(lo_.size()); }
  const std::vector<Coord>& lo() const { return lo_; }
  const std::vector<Coord>& hi() const { return hi_; }
  Coord lo(int axis) const { return lo_[axis]; }
  Coord hi(int axis) const { return hi_[axis]; }
  Coord side(int axis) const { return hi_[axis] - lo_[axis]; }
  Interval interval(int axis) const { return {lo_[axis], hi_[axis]}; }
  bool is_proper() const;

  /// Number of lattice points; saturates at kInfinity.
  Coord cell_count() const;
  bool contains(std::span<const Coord> x) const;
  bool contains(const Rect& other) const;
  bool intersects(const Rect& other) const;

  /// The rectangle with axis `axis` replaced by `iv`.
  Rect with_interval(int axis, Interval iv) const;
  /// Inserts a new coordinate interval at position `axis` (inverse of drop).
  Rect insert_axis(int axis, Interval iv) const;
  Rect translated(std::span<const Coord> offset) const;
  /// Clamps to `bounds`; nullopt when disjoint.
  std::optional<Rect> clipped(const Rect& bounds) const;

  friend bool operator==(const Rect&, const Rect&) = default;
  friend auto operator<=>(const Rect&, const Rect&) = default;

 private:
  std::vector<Coord> lo_;
  std::vector<Coord> hi_;
};

Coord chebyshev(std::span<const Coord> x, std::span<const Coord> y);
Coord norm(std::span<const Coord> x);
Coord point_rect_distance(std::span<const Coord> x, const Rect& r);
Coord rect_distance(const Rect& a, const Rect& b);
/// Chebyshev distance between the images of two boxes on a torus.
Coord torus_rect_distance(const Rect& a, const Rect& b, std::span<const Coord> periods);
/// Infimum over a list; kInfinity for an empty list.
Coord rect_set_distance(const Rect& a, std::span<const Rect> others);

/// Distance from x to the complement of r (0 when x lies outside r).
Coord distance_to_complement(std::span<const Coord> x, const Rect& r);

/// sigma_i: drops coordinate `axis`.
Rect drop_axis(const Rect& r, int axis);
Point drop_axis(std::span<const Coord> x, int axis);
/// pi_i: keeps coordinate `axis`.
inline Interval keep_axis(const Rect& r, int axis) { return r.interval(axis); }

/// The 2^n extreme points; the k-th (0-based here) takes hi on axis i iff
/// bit i of k is set, so index 0 is the coordinatewise-least corner.
std::vector<Point> corners_canonical(const Rect& r);
Point corner(const Rect& r, unsigned mask);

/// delta-core: {x in r : rho(x, complement) > delta}. Throws EmptyCore when
/// delta > 0 and some side is <= 2 delta.
Rect core(const Rect& r, Coord delta);
Rect extension(const Rect& r, Coord delta);

std::string to_string(const Point& p);
std::string to_string(const Rect& r);

}  // namespace strongmark
