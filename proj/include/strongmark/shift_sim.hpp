#pragma once

// Marker sets on a tiled world: region scheduling, the round-by-round
// package construction with cross-region guards, its multiples variant,
// and the general construction for mixed axis and diagonal generators.

#include <cstdint>
#include <functional>
#include <vector>

#include "strongmark/multiples.hpp"
#include "strongmark/rect_markers.hpp"
#include "strongmark/slanted.hpp"
#include "strongmark/verify.hpp"
#include "strongmark/world.hpp"

namespace strongmark {

/// Rectangle schedule with the package counts redefined for neighbouring
/// regions: N_1 = 4^{n-1}, N_{i+1} = 4^{n-1}(2N_i+1)^{n-1} + (n-1)2^{n+1}N_i + 5,
/// D_1 = 4 N_n d_1 and D = 2 D_1.
struct ShiftSchedule {
  RectSchedule rect;
  std::vector<Coord> N;  // index 0 unused
  Coord D1 = 0;
  Coord D = 0;
};

std::vector<Coord> shift_package_counts(int n);
ShiftSchedule shift_schedule_from(const RectSchedule& rect);
ShiftSchedule minimal_shift_schedule(int n, Coord d0);
ShiftSchedule paper_shift_schedule(int n, Coord d0);
ShiftSchedule minimal_shift_multiples_schedule(int n, Coord d0, const AlphaTable& table);

/// Regions grouped into steps; regions in one step are more than 2 D_1 apart.
struct RegionSchedule {
  std::vector<std::vector<int>> steps;
  std::vector<int> step_of;
  /// True when steps come from the anchor-block key rather than greedy colouring.
  bool local = false;
};

/// Anchor-block classes when they separate conflicting regions, otherwise
/// greedy colouring of the conflict graph (regions within 2 D_1 conflict).
RegionSchedule schedule_regions(const Tiling& tiling, Coord D1);
RegionSchedule greedy_schedule(const Tiling& tiling, Coord D1);
std::vector<std::string> schedule_violations(const Tiling& tiling, const RegionSchedule& s, Coord D1);

struct ShiftResult {
  MarkerSet markers;
  std::vector<PackageFamily> families;
  RegionSchedule schedule;
};

/// Filled regions; everything else still gets its package family.
using RegionFilter = std::function<bool(int region)>;

/// Package families for every region, checked against (i)-(vii), then
/// filled. Markers are reduced into the world on a torus.
ShiftResult strong_shift_build(const Tiling& tiling, const ShiftSchedule& sched, const PackageMarker& fill,
                               const RegionFilter& keep = {});

MarkerSet strong_shift_markers(const Tiling& tiling, const ShiftSchedule& sched);
MarkerSet strong_shift_markers_multiples(const Tiling& tiling, const ShiftSchedule& sched, const AlphaTable& table);

/// Hypothesis (vii): packages of different regions (including torus copies
/// of the same region) at distance >= d_i, where i is the later round.
std::vector<std::string> cross_region_violations(const Tiling& tiling, const std::vector<PackageFamily>& families,
                                                 const std::vector<Coord>& d);

/// Generators split into full-support directions and axis multiples.
struct GeneratorSet {
  int n = 0;
  std::vector<Point> all;
  std::vector<Point> diagonal;
  AlphaTable axis;  // per axis; padded with 1 where no generator is given
};

/// Throws UnsupportedGenerator when some support size is neither 1 nor n.
GeneratorSet classify_generators(int n, const std::vector<Point>& gens);

struct CoreFiltration {
  std::vector<Coord> mu;     // mu_0 .. mu_{m_0}
  std::vector<Coord> delta;  // delta(n, d_0, v_k), k = 1..m_0 (index 0 unused)
};

/// Every constant of the general construction.
struct GeneralParams {
  GeneratorSet S;
  Coord d0 = 0;
  ShiftSchedule sched;
  CoreFiltration filtration;
  Coord lower = 0;      // 2^{n+1}(mu_{m_0}+1) sum |v_k|
  Coord Delta = 0;      // least even multiple q D_1 above `lower`
  Coord q = 0;
  /// Coarse classes hold q bricks of D_1+1 cells per axis, so their side
  /// lengths are Delta_t = q(D_1+1)-1 or Delta_t+1.
  Coord Delta_t = 0;
  Coord B = 0;          // 2 Delta_t + 1
};

GeneralParams general_parameters(int n, Coord d0, const std::vector<Point>& gens, bool paper_schedule = false);

/// Torus with `classes` coarse classes per axis; `extra` adds one cell to
/// the first class on every axis.
World general_torus(const GeneralParams& p, Coord classes, bool extra = false);

struct GeneralResult {
  Tiling coarse;
  Tiling bricks;
  std::vector<int> brick_class;  // coarse class of each brick
  std::vector<bool> in_X;        // brick meets an upper face of its class
  MarkerSet markers;
  /// cores[c][k] = K_k of coarse class c.
  std::vector<std::vector<Rect>> cores;
};

GeneralResult general_markers(const World& world, const GeneralParams& p, TilingStyle style, std::uint64_t seed);

/// Every cell x has some a in [-Delta/2, Delta/2] with x + a v in the
/// delta-core of a coarse class. Worst |a| is reported.
Report hitting_check(const Tiling& coarse, const Point& v, Coord delta, Coord Delta);

}  // namespace strongmark
