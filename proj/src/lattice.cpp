#include "strongmark/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace strongmark {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyCore: return "EmptyCore";
    case ErrorCode::TooThin: return "TooThin";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::InfeasibleSides: return "InfeasibleSides";
    case ErrorCode::TilingMismatch: return "TilingMismatch";
    case ErrorCode::UnsupportedGenerator: return "UnsupportedGenerator";
    case ErrorCode::WorldTooSmall: return "WorldTooSmall";
    case ErrorCode::SpacingTooSmall: return "SpacingTooSmall";
    case ErrorCode::WrongMode: return "WrongMode";
    case ErrorCode::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Coord checked_add(Coord a, Coord b) {
  Coord out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "addition overflows int64");
  return out;
}

Coord checked_mul(Coord a, Coord b) {
  Coord out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "multiplication overflows int64");
  return out;
}

Coord checked_pow(Coord base, int exp) {
  Coord out = 1;
  for (int k = 0; k < exp; ++k) out = checked_mul(out, base);
  return out;
}

Coord floor_div(Coord a, Coord b) {
  Coord q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Coord ceil_div(Coord a, Coord b) { return -floor_div(-a, b); }

Coord floor_mod(Coord a, Coord m) {
  Coord r = a % m;
  return r < 0 ? r + m : r;
}

Coord interval_gap(const Interval& a, const Interval& b) {
  if (a.hi < b.lo) return b.lo - a.hi;
  if (b.hi < a.lo) return a.lo - b.hi;
  return 0;
}

Coord cyclic_gap(const Interval& a, const Interval& b, Coord period) {
  if (a.length() + 1 >= period || b.length() + 1 >= period) return 0;
  // Bring b next to a; shifts by one extra period either way cover wrap.
  const Coord base = floor_div(a.lo - b.lo, period);
  Coord best = kInfinity;
  for (Coord k = base - 1; k <= base + 2; ++k) {
    const Coord s = k * period;
    best = std::min(best, interval_gap(a, Interval{b.lo + s, b.hi + s}));
  }
  return best;
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  Interval out{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (out.lo > out.hi) return std::nullopt;
  return out;
}

Rect::Rect(std::vector<Coord> lo, std::vector<Coord> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) throw Error(ErrorCode::DimensionMismatch, "rect bounds differ in dimension");
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (lo_[i] > hi_[i]) throw Error(ErrorCode::InvalidArgument, "rect with lo > hi on axis " + std::to_string(i));
  }
}

Rect Rect::from_intervals(std::span<const Interval> sides) {
  std::vector<Coord> lo, hi;
  for (const auto& s : sides) {
    lo.push_back(s.lo);
    hi.push_back(s.hi);
  }
  return Rect(std::move(lo), std::move(hi));
}

Rect Rect::cube(int n, Coord lo, Coord hi) {
  return Rect(std::vector<Coord>(n, lo), std::vector<Coord>(n, hi));
}

Rect Rect::point(const Point& p) { return Rect(p, p); }

bool Rect::is_proper() const {
  for (int i = 0; i < dim(); ++i)
    if (side(i) <= 0) return false;
  return true;
}

Coord Rect::cell_count() const {
  Coord out = 1;
  for (int i = 0; i < dim(); ++i) {
    Coord s = side(i) + 1;
    if (out > kInfinity / s) return kInfinity;
    out *= s;
  }
  return out;
}

bool Rect::contains(std::span<const Coord> x) const {
  for (int i = 0; i < dim(); ++i)
    if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
  return true;
}

bool Rect::contains(const Rect& other) const {
  for (int i = 0; i < dim(); ++i)
    if (other.lo_[i] < lo_[i] || other.hi_[i] > hi_[i]) return false;
  return true;
}

bool Rect::intersects(const Rect& other) const {
  for (int i = 0; i < dim(); ++i)
    if (other.hi_[i] < lo_[i] || other.lo_[i] > hi_[i]) return false;
  return true;
}

Rect Rect::with_interval(int axis, Interval iv) const {
  Rect out = *this;
  out.lo_[axis] = iv.lo;
  out.hi_[axis] = iv.hi;
  return out;
}

Rect Rect::insert_axis(int axis, Interval iv) const {
  Rect out = *this;
  out.lo_.insert(out.lo_.begin() + axis, iv.lo);
  out.hi_.insert(out.hi_.begin() + axis, iv.hi);
  return out;
}

Rect Rect::translated(std::span<const Coord> offset) const {
  Rect out = *this;
  for (int i = 0; i < dim(); ++i) {
    out.lo_[i] += offset[i];
    out.hi_[i] += offset[i];
  }
  return out;
}

std::optional<Rect> Rect::clipped(const Rect& bounds) const {
  Rect out = *this;
  for (int i = 0; i < dim(); ++i) {
    out.lo_[i] = std::max(lo_[i], bounds.lo_[i]);
    out.hi_[i] = std::min(hi_[i], bounds.hi_[i]);
    if (out.lo_[i] > out.hi_[i]) return std::nullopt;
  }
  return out;
}

Coord chebyshev(std::span<const Coord> x, std::span<const Coord> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "chebyshev on points of different dimension");
  Coord out = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Coord d = x[i] > y[i] ? x[i] - y[i] : y[i] - x[i];
    out = std::max(out, d);
  }
  return out;
}

Coord norm(std::span<const Coord> x) {
  Coord out = 0;
  for (Coord c : x) out = std::max(out, c < 0 ? -c : c);
  return out;
}

Coord point_rect_distance(std::span<const Coord> x, const Rect& r) {
  Coord out = 0;
  for (int i = 0; i < r.dim(); ++i) out = std::max(out, interval_gap(Interval{x[i], x[i]}, r.interval(i)));
  return out;
}

Coord rect_distance(const Rect& a, const Rect& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "rect_distance on rects of different dimension");
  Coord out = 0;
  for (int i = 0; i < a.dim(); ++i) out = std::max(out, interval_gap(a.interval(i), b.interval(i)));
  return out;
}

Coord torus_rect_distance(const Rect& a, const Rect& b, std::span<const Coord> periods) {
  Coord out = 0;
  for (int i = 0; i < a.dim(); ++i) out = std::max(out, cyclic_gap(a.interval(i), b.interval(i), periods[i]));
  return out;
}

Coord rect_set_distance(const Rect& a, std::span<const Rect> others) {
  Coord out = kInfinity;
  for (const auto& o : others) out = std::min(out, rect_distance(a, o));
  return out;
}

Coord distance_to_complement(std::span<const Coord> x, const Rect& r) {
  if (!r.contains(x)) return 0;
  Coord out = kInfinity;
  for (int i = 0; i < r.dim(); ++i) out = std::min({out, x[i] - r.lo(i) + 1, r.hi(i) - x[i] + 1});
  return out;
}

Rect drop_axis(const Rect& r, int axis) {
  if (axis < 0 || axis >= r.dim()) throw Error(ErrorCode::InvalidArgument, "axis out of range");
  auto lo = r.lo();
  auto hi = r.hi();
  lo.erase(lo.begin() + axis);
  hi.erase(hi.begin() + axis);
  return Rect(std::move(lo), std::move(hi));
}

Point drop_axis(std::span<const Coord> x, int axis) {
  Point out(x.begin(), x.end());
  out.erase(out.begin() + axis);
  return out;
}

Point corner(const Rect& r, unsigned mask) {
  Point p(r.dim());
  for (int i = 0; i < r.dim(); ++i) p[i] = (mask >> i) & 1u ? r.hi(i) : r.lo(i);
  return p;
}

std::vector<Point> corners_canonical(const Rect& r) {
  std::vector<Point> out;
  const unsigned count = 1u << r.dim();
  out.reserve(count);
  for (unsigned k = 0; k < count; ++k) out.push_back(corner(r, k));
  return out;
}

Rect core(const Rect& r, Coord delta) {
  if (delta < 0) throw Error(ErrorCode::InvalidArgument, "negative core radius");
  auto lo = r.lo();
  auto hi = r.hi();
  for (int i = 0; i < r.dim(); ++i) {
    if (delta > 0 && r.side(i) <= 2 * delta)
      throw Error(ErrorCode::EmptyCore, "side " + std::to_string(r.side(i)) + " <= 2*" + std::to_string(delta));
    lo[i] += delta;
    hi[i] -= delta;
  }
  return Rect(std::move(lo), std::move(hi));
}

Rect extension(const Rect& r, Coord delta) {
  auto lo = r.lo();
  auto hi = r.hi();
  for (int i = 0; i < r.dim(); ++i) {
    lo[i] = checked_add(lo[i], -delta);
    hi[i] = checked_add(hi[i], delta);
  }
  return Rect(std::move(lo), std::move(hi));
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ')';
  return os.str();
}

std::string to_string(const Rect& r) {
  std::ostringstream os;
  for (int i = 0; i < r.dim(); ++i) os << (i ? "x" : "") << '[' << r.lo(i) << ',' << r.hi(i) << ']';
  if (r.dim() == 0) os << "{}";
  return os.str();
}

}  // namespace strongmark
