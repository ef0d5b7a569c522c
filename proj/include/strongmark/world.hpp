#pragma once

// Finite stand-ins for one orbit: a torus (coordinates mod L) or a window
// (a box with no wraparound), and tilings of either by rectangular regions.

#include <cstdint>
#include <optional>
#include <vector>

#include "strongmark/lattice.hpp"

namespace strongmark {

enum class WorldMode { Torus, Window };

struct World {
  int n = 0;
  std::vector<Coord> L;
  WorldMode mode = WorldMode::Torus;
  /// Cells closer than this to the window edge are not checked for hitting.
  Coord margin = 0;

  static World torus(std::vector<Coord> L);
  static World window(std::vector<Coord> L, Coord margin = 0);

  bool is_torus() const { return mode == WorldMode::Torus; }
  Coord cell_count() const;  // saturating
  Rect box() const;          // [0, L-1] on every axis
  /// Cells that hitting checks cover: the whole torus, or the window minus its margin.
  std::optional<Rect> checked_box() const;
  /// Reduces into [0, L) on a torus; checks bounds in a window.
  Point wrap(std::span<const Coord> x) const;
  void wrap_in_place(std::span<Coord> x) const;
  bool contains(std::span<const Coord> x) const;
  Coord distance(std::span<const Coord> x, std::span<const Coord> y) const;
  friend bool operator==(const World&, const World&) = default;
};

/// Region seen from another region: `region` translated by `shift` (a
/// multiple of the periods on a torus, zero in a window).
struct Neighbor {
  int region = 0;
  Point shift;
  Coord distance = 0;
};

/// Rectangular regions partitioning a world. On a torus a region is stored
/// with lo in [0, L) and may run past L, meaning it wraps.
class Tiling {
 public:
  Tiling() = default;
  Tiling(World world, std::vector<Rect> regions);

  const World& world() const { return world_; }
  const std::vector<Rect>& regions() const { return regions_; }
  std::size_t size() const { return regions_.size(); }
  const Rect& operator[](std::size_t k) const { return regions_[k]; }

  /// Index of the region holding x (x is wrapped first); -1 outside a window.
  int region_of(std::span<const Coord> x) const;
  /// The copy of region k that contains x, in x's own coordinates.
  Rect copy_containing(int k, std::span<const Coord> x) const;
  /// Every (region, shift) whose translate lies within `radius` of region k,
  /// except region k itself at shift zero.
  std::vector<Neighbor> near(int k, Coord radius) const;

  /// Smallest and largest side length over all regions and axes.
  Coord min_side() const;
  Coord max_side() const;
  /// Empty when the regions partition the world; otherwise messages.
  std::vector<std::string> violations() const;

  friend bool operator==(const Tiling& a, const Tiling& b) { return a.world_ == b.world_ && a.regions_ == b.regions_; }

 private:
  void index();
  std::vector<std::size_t> buckets_over(const Rect& r) const;
  World world_;
  std::vector<Rect> regions_;
  std::vector<Coord> bucket_;  // bucket width per axis
  std::vector<Coord> nb_;      // bucket count per axis
  std::vector<std::vector<int>> members_;
};

enum class TilingStyle { Grid, Brick };

/// Cell counts along one axis: every part has d+1 or d+2 cells (side length
/// d or d+1), the longer parts first. Throws InfeasibleSides.
std::vector<Coord> compose_length(Coord L, Coord d);

/// Regions of side length d or d+1. Brick style reshuffles the composition
/// of every axis-1 slab, and on a torus also rotates it, so faces meet
/// several regions.
Tiling build_tiling(const World& world, Coord d, TilingStyle style, std::uint64_t seed);

/// Deterministic 64-bit generator shared by everything that takes a seed.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t s_;
};

}  // namespace strongmark
