#include "strongmark/slanted.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "strongmark/multiples.hpp"

namespace strongmark {

namespace {

// Sign note: every height recursion below runs on |nu| after reflecting
// axes so the direction is positive; heights are lengths.

void require_direction(const Point& v, int n) {
  if (static_cast<int>(v.size()) != n) throw Error(ErrorCode::DimensionMismatch, "direction has wrong dimension");
  for (Coord c : v)
    if (c == 0) throw Error(ErrorCode::DegenerateDirection, "direction has a zero coordinate");
}

Coord abs_coord(Coord x) { return x < 0 ? -x : x; }

Coord gcd_all(const Point& v) {
  Coord g = 0;
  for (Coord c : v) g = std::gcd(g, abs_coord(c));
  return g;
}

BigInt big_pow(BigInt b, int e) {
  BigInt r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

// Normalized frame: base axes in increasing order, then the flat axis;
// every direction coordinate positive; the flat coordinate measured from
// the base level.
struct Frame {
  int n = 0;
  int axis = 0;
  std::vector<int> order;      // normalized position -> original axis
  std::vector<Coord> sign;     // per original axis
  Coord base_level = 0;        // original coordinate of the base on `axis`
  Point w;                     // normalized direction, all positive

  Frame(const Point& v, int axis_, Coord level) : n(static_cast<int>(v.size())), axis(axis_), base_level(level) {
    for (int j = 0; j < n; ++j)
      if (j != axis) order.push_back(j);
    order.push_back(axis);
    sign.resize(n);
    for (int j = 0; j < n; ++j) sign[j] = v[j] > 0 ? 1 : -1;
    for (int k = 0; k < n; ++k) w.push_back(abs_coord(v[order[k]]));
  }

  Interval to_norm(int k, Interval iv) const {
    const Coord s = sign[order[k]];
    return s > 0 ? iv : Interval{-iv.hi, -iv.lo};
  }

  void to_orig(std::span<const Coord> y, std::span<Coord> x) const {
    for (int k = 0; k + 1 < n; ++k) x[order[k]] = sign[order[k]] * y[k];
    x[axis] = checked_add(base_level, sign[axis] * y[n - 1]);
  }
};

}  // namespace

Coord to_coord(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<Coord>::max()) || v < BigInt(std::numeric_limits<Coord>::min()))
    throw Error(ErrorCode::Overflow, "constant does not fit a 64-bit coordinate");
  return static_cast<Coord>(v);
}

SlantedConstants slanted_constants(int n, Coord d, const Point& v, int axis) {
  require_direction(v, n);
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be positive");
  if (axis < 0 || axis >= n) throw Error(ErrorCode::InvalidArgument, "axis out of range");
  SlantedConstants c;
  const Coord a = gcd_all(v);
  c.alpha = a;
  const BigInt nu = abs_coord(v[axis]);
  const BigInt vn = norm(v);
  const BigInt D = 2 * BigInt(a) * big_pow(d, n) - d + BigInt(a - 1) * (a - 1);
  c.h.push_back(D * nu / a);
  for (int k = 0; k + 1 < n; ++k) {
    const BigInt& hk = c.h.back();
    c.h.push_back(hk + hk * d * vn * (hk + 1) * d * nu);
  }
  c.Ht.push_back(c.h.back());
  for (BigInt t = 0; t + 1 < nu; ++t) c.Ht.push_back((c.Ht.back() + d) * nu);
  c.H = c.Ht.back();
  return c;
}

BigInt slanted_height(int n, Coord d, const Point& v, int axis) { return slanted_constants(n, d, v, axis).H; }

BigInt slanted_delta(int n, Coord d, const Point& v) {
  require_direction(v, n);
  const BigInt vn = norm(v);
  BigInt delta = BigInt(n + 1) * d * vn;
  for (int i = 0; i < n; ++i) delta += slanted_height(n, d, v, i) * vn;
  return delta;
}

bool pp_contains(const Parallelopiped& p, std::span<const Coord> x) {
  const int n = p.base.dim();
  if (static_cast<int>(x.size()) != n) throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
  const int i = p.axis;
  using W = __int128;
  const W nu = p.v[i];
  const W u = W(x[i]) - p.base.lo(i);
  if (!p.infinite) {
    if (u != 0 && ((u > 0) != (nu > 0))) return false;
    if ((u < 0 ? -u : u) > p.height) return false;
  }
  // base point b_j = x_j - u nu_j / nu_i, scaled by nu_i
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const W s = nu * x[j] - u * p.v[j];
    W lo = nu * p.base.lo(j), hi = nu * p.base.hi(j);
    if (nu < 0) std::swap(lo, hi);
    if (s < lo || s > hi) return false;
  }
  return true;
}

Point line_key(std::span<const Coord> x, const Point& v) {
  const Coord nu = v[0];
  const Coord q = floor_div(x[0], abs_coord(nu)) * (nu > 0 ? 1 : -1);
  Point out(x.begin(), x.end());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = checked_add(out[j], -checked_mul(q, v[j]));
  return out;
}

MarkerSet slanted_marker(const Rect& S, const Point& v, int axis, Coord d) {
  const int n = S.dim();
  require_direction(v, n);
  if (axis < 0 || axis >= n) throw Error(ErrorCode::InvalidArgument, "axis out of range");
  if (S.side(axis) != 0) throw Error(ErrorCode::InvalidArgument, "base must be flat along the package axis");
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be positive");

  const SlantedConstants K = slanted_constants(n, d, v, axis);
  const Coord H = to_coord(K.H);
  const Frame F(v, axis, S.lo(axis));
  const Point& w = F.w;
  const Coord nu = w[n - 1];
  const Coord alpha = to_coord(K.alpha);
  const Coord vnorm = norm(v);
  const Coord stride = 2 * d + alpha_offset(1, d, alpha);

  std::vector<Interval> Q;
  for (int k = 0; k + 1 < n; ++k) Q.push_back(F.to_norm(k, S.interval(F.order[k])));

  MarkerSet out(n, d);
  std::vector<Coord> orig(n);
  Coord prev_top = 0;
  bool first = true;
  for (Coord t = 0; t < nu; ++t) {
    // slab base: the lattice points at flat coordinate t
    std::vector<Interval> St;
    bool empty = false;
    for (int k = 0; k + 1 < n; ++k) {
      const Coord lo = Q[k].lo + ceil_div(t * w[k], nu);
      const Coord hi = Q[k].hi + floor_div(t * w[k], nu);
      if (lo > hi) empty = true;
      St.push_back({lo, hi});
    }
    if (empty) continue;

    // base case on the least point: alpha steps along v / alpha
    std::vector<Coord> M;
    Point x0(n);
    for (int k = 0; k + 1 < n; ++k) x0[k] = St[k].lo;
    x0[n - 1] = t;
    for (Coord T = 0; T < alpha; ++T)
      for (int k = 0; k < n; ++k) M.push_back(x0[k] + checked_mul(T * stride, w[k] / alpha));

    // one base axis at a time
    int level = 0;
    for (int k = 0; k + 1 < n; ++k) {
      const Coord ell = St[k].length();
      if (ell == 0) continue;
      const BigInt& hk = K.h[level];
      const BigInt mk_big = hk * d * vnorm;
      const Coord mk = mk_big > ell ? ell + 1 : to_coord(mk_big);
      const Coord lift = to_coord((hk + 1) * d);
      std::vector<Coord> next;
      next.reserve(M.size() * (ell + 1));
      for (Coord lam = 0; lam <= ell; ++lam) {
        const Coord r = checked_mul(lam % mk, lift);
        for (std::size_t p = 0; p < M.size(); p += n)
          for (int j = 0; j < n; ++j) {
            Coord c = checked_add(M[p + j], checked_mul(r, w[j]));
            if (j == k) c += lam;
            next.push_back(c);
          }
      }
      M = std::move(next);
      ++level;
    }

    Coord top = t;
    for (std::size_t p = n - 1; p < M.size(); p += n) top = std::max(top, M[p]);
    Coord c = 0;
    if (!first && t < prev_top + d) c = ceil_div(prev_top + d - t, nu);
    const Coord lift = checked_mul(c, nu);
    top = checked_add(top, lift);
    if (top > H) throw Error(ErrorCode::InternalInvariant, "slab stack exceeds the package height");
    for (std::size_t p = 0; p < M.size(); p += n) {
      for (int j = 0; j < n; ++j) M[p + j] = checked_add(M[p + j], checked_mul(c, w[j]));
      F.to_orig(std::span<const Coord>(M.data() + p, n), orig);
      out.add(orig);
    }
    prev_top = top;
    first = false;
  }
  out.normalize();
  return out;
}

CornerPackages corner_packages(const Rect& R0, const Point& v, Coord d) {
  const int n = R0.dim();
  require_direction(v, n);
  if (!R0.is_proper()) throw Error(ErrorCode::InvalidArgument, "rectangle must be proper");
  CornerPackages res;
  res.delta = to_coord(slanted_delta(n, d, v));
  res.outer = extension(R0, res.delta);
  for (int j = 0; j < n; ++j)
    if (v[j] > 0) res.corner_mask |= 1u << j;
  const Point x = corner(R0, res.corner_mask);

  res.markers = MarkerSet(n, d);
  Coord mult = 1;  // v_i = mult * v
  for (int i = 0; i < n; ++i) {
    Rect face = R0.with_interval(i, {x[i], x[i]});
    Point shift(n);
    for (int j = 0; j < n; ++j) shift[j] = checked_mul(mult, v[j]);
    Parallelopiped P;
    P.base = face.translated(shift);
    P.v = v;
    P.axis = i;
    P.height = to_coord(slanted_height(n, d, v, i));
    res.markers.append(slanted_marker(P.base, v, i, d));
    res.packages.push_back(P);
    mult = checked_add(mult, checked_add(P.height, d));
  }
  res.markers.normalize();
  return res;
}

}  // namespace strongmark
