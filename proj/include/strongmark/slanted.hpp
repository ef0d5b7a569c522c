#pragma once

// Parallelopiped packages for directions with no zero coordinate: exact
// membership, the height constants, markers inside a parallelopiped, and
// the corner packages wrapped around a rectangle.

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "strongmark/marker_set.hpp"

namespace strongmark {

using BigInt = boost::multiprecision::cpp_int;

/// Throws Overflow when the value does not fit a coordinate.
Coord to_coord(const BigInt& v);

/// Heights are measured along |nu_i|; see the sign note in the sources.
struct SlantedConstants {
  BigInt alpha;            // gcd of the coordinates
  std::vector<BigInt> h;   // h_0 .. h_{n-1}
  std::vector<BigInt> Ht;  // H_0 .. H_{|nu_i|-1}
  BigInt H;                // H(n,d,v,i)
};

SlantedConstants slanted_constants(int n, Coord d, const Point& v, int axis);
BigInt slanted_height(int n, Coord d, const Point& v, int axis);
/// (n+1) d |v| + sum_i H(n,d,v,i) |v|.
BigInt slanted_delta(int n, Coord d, const Point& v);

/// Lattice points of base + t v, with the base flat along `axis` and
/// 0 <= t <= height / |nu_axis| (any real t when infinite).
struct Parallelopiped {
  Rect base;
  Point v;
  int axis = 0;
  Coord height = 0;
  bool infinite = false;
};

bool pp_contains(const Parallelopiped& p, std::span<const Coord> x);

/// Canonical point of the line x + Z v: the one whose first coordinate
/// lies in [0, |nu_1|).
Point line_key(std::span<const Coord> x, const Point& v);

/// Markers of spacing d inside L(S, v, H(n,d,v,axis)) meeting every line
/// x + Z v through L(S, v). S must be flat along `axis`.
MarkerSet slanted_marker(const Rect& S, const Point& v, int axis, Coord d);

struct CornerPackages {
  MarkerSet markers;
  Rect outer;                             // the delta-extension R_1
  Coord delta = 0;
  unsigned corner_mask = 0;               // bit i set: the corner takes hi on axis i
  std::vector<Parallelopiped> packages;   // one per face through the corner
};

/// Markers in R_1 \ R_0 hit by every v-line through R_0 and at least d from
/// the complement of R_1.
CornerPackages corner_packages(const Rect& R0, const Point& v, Coord d);

}  // namespace strongmark
