#pragma once

// Flat storage for a set of lattice points: coordinates live in one vector,
// point k occupies [k*n, (k+1)*n). Millions of 2-D markers fit comfortably.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "strongmark/lattice.hpp"

namespace strongmark {

/// Per-direction hitting bound carried alongside a marker set. `label` is an
/// axis number ("1".."n") or a generator written like "(1,1)".
struct HitBound {
  std::string label;
  Coord a_max = 0;
  Coord b_max = 0;
  friend bool operator==(const HitBound&, const HitBound&) = default;
};

class MarkerSet {
 public:
  MarkerSet() = default;
  MarkerSet(int dim, Coord spacing) : dim_(dim), spacing_(spacing) {}

  int dim() const { return dim_; }
  Coord spacing() const { return spacing_; }
  void set_spacing(Coord d) { spacing_ = d; }

  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }
  std::span<const Coord> operator[](std::size_t k) const { return {coords_.data() + k * dim_, std::size_t(dim_)}; }
  Point point(std::size_t k) const {
    auto s = (*this)[k];
    return Point(s.begin(), s.end());
  }
  const std::vector<Coord>& raw() const { return coords_; }

  void add(std::span<const Coord> x);
  void append(const MarkerSet& other);
  void reserve(std::size_t points) { coords_.reserve(points * dim_); }

  /// Sort lexicographically and drop duplicates. Most queries require this.
  void normalize();
  bool is_normalized() const;
  /// Binary search; requires normalize().
  bool contains(std::span<const Coord> x) const;

  std::vector<HitBound> bounds;

  friend bool operator==(const MarkerSet& a, const MarkerSet& b) {
    return a.dim_ == b.dim_ && a.spacing_ == b.spacing_ && a.coords_ == b.coords_ && a.bounds == b.bounds;
  }

 private:
  int dim_ = 0;
  Coord spacing_ = 0;
  std::vector<Coord> coords_;
};

}  // namespace strongmark
