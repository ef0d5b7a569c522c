#pragma once

// Edge colourings and tree sections read off a strong marker set.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "strongmark/marker_set.hpp"
#include "strongmark/verify.hpp"
#include "strongmark/world.hpp"

namespace strongmark {

/// Spacing an edge colouring needs from its marker set.
inline constexpr Coord kColoringSpacing = 100;
/// Offset at which the odd-gap edge takes the spare colour.
inline constexpr Coord kSpareOffset = 10;
/// Spacing a tree section needs.
inline constexpr Coord kTreeSpacing = 10;

/// Colour of the edge {x, x + g_j} from the offsets of x. `j` is 1-based,
/// `m` the number of generators; colours run 1..2m+1.
int offset_color(Coord a, Coord b, int j, int m);

/// Colours every edge along e_1..e_n. Cells whose offsets are not determined
/// inside a window stay uncoloured. The offset tables are filled only on
/// request; they cost two words per edge. Throws SpacingTooSmall.
EdgeColoring edge_coloring(const World& world, const MarkerSet& M, bool keep_offsets = false);

/// Same case analysis along each generator, offsets counted in g-steps.
EdgeColoring general_edge_coloring(const World& world, const std::vector<Point>& gens, const MarkerSet& M,
                                   bool keep_offsets = false);

/// Bracket shape relative to its marker, on the (e_1, e_2) plane.
inline constexpr std::array<std::array<int, 2>, 5> kBracket{{{0, -1}, {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

struct TreeSection {
  World world;
  MarkerSet markers;               // normalised
  MarkerSet brackets;              // bracket anchors: the markers, unless tampered with
  std::vector<Coord> k;            // ladder length per marker, -1 when it leaves the window
  std::vector<std::int64_t> parent;  // marker index, -1 when truncated

  /// Explicit edges of T as cell pairs. Meant for small windows.
  std::vector<std::array<Point, 2>> edges() const;
};

/// Brackets and ladders on a window. Throws WrongMode on a torus and
/// SpacingTooSmall below kTreeSpacing.
TreeSection tree_section(const World& world, const MarkerSet& M);

struct TreeReport {
  Report report;
  std::uint64_t interior = 0;      // markers whose bracket and ladder sit in the core
  std::uint64_t truncated = 0;
  std::uint64_t unique_parent = 0;
  std::uint64_t multi_parent = 0;
  std::uint64_t cycles = 0;
  bool complete = false;           // T meets the core
  bool cocomplete = false;         // some core cell avoids T
  std::int64_t max_degree = -1;    // only when `degrees` was requested
  std::vector<std::string> warnings;
};

/// Recomputes every ladder from the brackets and checks parents, cycles and
/// (co-)completeness over the core window (the window minus its margin).
/// With `degrees` the explicit graph is built and vertex degrees counted.
TreeReport verify_tree(const TreeSection& t, bool degrees = false);

}  // namespace strongmark
