#pragma once

// Checkers for every claimed property. They share nothing with the
// constructions beyond lattice primitives and the world/tiling types.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "strongmark/lattice.hpp"
#include "strongmark/marker_set.hpp"
#include "strongmark/world.hpp"

namespace strongmark {

/// Outcome of one check. For spacing `worst` is the least distance found,
/// exact whenever it is below the bound (kInfinity for fewer than two
/// points); for hitting it is the largest forward offset and `worst_b` the
/// largest backward one.
struct Report {
  std::string check;
  bool pass = true;
  Coord worst = 0;
  Coord worst_b = 0;
  Coord bound = kInfinity;
  std::vector<Point> witness;
  std::string message;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  bool sampled = false;

  /// Records a violation; the first one keeps its witness and message.
  void fail(std::vector<Point> w, std::string msg);
};

/// Exact least pairwise distance; flat metric.
Report check_spacing(const MarkerSet& M, Coord d);
/// Toroidal metric on a torus, flat in a window.
Report check_spacing(const MarkerSet& M, Coord d, const World& world);

/// Without a bound: every e_axis-line through `domain` holds a marker of
/// `domain`. With a bound: every cell x of `domain` has markers x + a e_axis
/// and x - b e_axis with 0 <= a, b <= bound (markers anywhere in M).
Report check_axis_hitting(const MarkerSet& M, const Rect& domain, int axis, std::optional<Coord> bound = {});
/// Two-sided check over the world's checked cells; wraps on a torus.
Report check_axis_hitting(const MarkerSet& M, const World& world, int axis, Coord bound);

/// Same two readings along x + t g.
Report check_general_hitting(const MarkerSet& M, const Rect& domain, const Point& g, std::optional<Coord> bound = {});
Report check_general_hitting(const MarkerSet& M, const World& world, const Point& g, Coord bound);

/// Colours of the edges {x, x + g_j}; 0 means uncoloured (window edges
/// whose offsets are not determined inside the window).
struct EdgeColoring {
  World world;
  std::vector<Point> gens;
  std::vector<std::uint8_t> color;  // [cell * gens.size() + j], cells in row-major order
  std::vector<Coord> a, b;          // offsets, same layout; -1 when unknown; may be left empty

  std::size_t cell_index(std::span<const Coord> x) const;
  Point cell(std::size_t index) const;
  std::uint8_t at(std::span<const Coord> x, std::size_t j) const { return color[cell_index(x) * gens.size() + j]; }
};

/// Every vertex sees pairwise distinct colours on its coloured edges and at
/// most `max_colors` colours are used. In a window only vertices with every
/// incident edge coloured are checked.
Report check_coloring(const EdgeColoring& c, int max_colors);

struct BruteResult {
  std::optional<std::size_t> size;  // nullopt: infeasible
  std::vector<Point> witness;
  std::uint64_t nodes = 0;
};

/// Least marker set inside r with spacing d meeting every line through r
/// along each direction. Throws SearchCapExceeded after `cap` nodes.
BruteResult brute_min_marker(const Rect& r, Coord d, const std::vector<Point>& directions,
                             std::uint64_t cap = 5'000'000);

using MarkerBuilder = std::function<MarkerSet(const Tiling&)>;

/// Builds M on both tilings and compares membership of `cell`. Fails with a
/// message when the tilings differ on the radius ball (nothing is claimed).
Report check_locality(const MarkerBuilder& build, const Tiling& a, const Tiling& b, const Point& cell, Coord radius);

/// True when both tilings have the same regions meeting the radius ball around cell.
bool tilings_agree_near(const Tiling& a, const Tiling& b, const Point& cell, Coord radius);

}  // namespace strongmark
