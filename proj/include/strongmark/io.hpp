#pragma once

// Text interchange formats, run configuration, reports, SVG and manifests.
// Every reader throws Error(Parse) with the offending line number.

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "strongmark/applications.hpp"
#include "strongmark/marker_set.hpp"
#include "strongmark/verify.hpp"
#include "strongmark/world.hpp"

namespace strongmark {

// ------------------------------------------------------------------ markers

void write_markers(std::ostream& out, const MarkerSet& M);
MarkerSet read_markers(std::istream& in);

// ------------------------------------------------------------------ tilings

/// Regions that run past L on a torus are written with lo > hi on that axis.
void write_tiling(std::ostream& out, const Tiling& t);
Tiling read_tiling(std::istream& in);

// ------------------------------------------------------------------ config

struct Config {
  int n = 2;
  Coord d0 = 1;
  std::string schedule = "minimal";  // paper | minimal | custom
  std::vector<Coord> d;              // d_1..d_n, custom schedules only
  TilingStyle style = TilingStyle::Brick;
  std::uint64_t seed = 0;
  WorldMode mode = WorldMode::Torus;
  std::vector<Point> generators;
  /// Any other key, verbatim (L, regions, margin, ...).
  std::map<std::string, std::string> extra;

  bool has(const std::string& key) const { return extra.count(key) > 0; }
  Coord get_int(const std::string& key, Coord fallback) const;
  std::vector<Coord> get_ints(const std::string& key) const;  // comma separated
  friend bool operator==(const Config&, const Config&) = default;
};

Config parse_config(std::istream& in);
Config parse_config_text(std::string_view text);
void write_config(std::ostream& out, const Config& c);
std::string to_string(TilingStyle s);
std::string to_string(WorldMode m);

/// "(1,0);(0,1)" and back.
std::vector<Point> parse_points(std::string_view text);
std::string format_points(const std::vector<Point>& pts);

// ------------------------------------------------------------------ reports

void write_report(std::ostream& out, const Report& r);
Report read_report(std::istream& in);

// ------------------------------------------------------------ colourings, trees

/// Header, then one line per cell with at least one coloured edge:
/// the cell's coordinates followed by one colour per generator.
void write_coloring(std::ostream& out, const EdgeColoring& c);
EdgeColoring read_coloring(std::istream& in);

/// Header, then per marker: its coordinates, k, and the parent's coordinates
/// or "-" when the ladder leaves the window.
void write_tree(std::ostream& out, const TreeSection& t);

// ---------------------------------------------------------------------- svg

/// Stroke colour for edge colour c (1-based); wraps after the palette ends.
std::string_view palette(int c);

/// One lattice cell per unit square, e_2 pointing up.
class Svg {
 public:
  Svg(Coord x0, Coord y0, Coord width, Coord height);
  void marker(Coord x, Coord y);
  void rect(const Rect& r, std::string_view stroke = "#444");
  void polygon(const std::vector<std::array<double, 2>>& corners, std::string_view fill = "#bbb");
  void edge(const Point& a, const Point& b, int color);
  std::string str() const;

 private:
  double sx(double x) const { return x - static_cast<double>(x0_); }
  double sy(double y) const { return static_cast<double>(y0_ + h_) - y; }
  Coord x0_, y0_, w_, h_;
  std::string body_;
};

// ----------------------------------------------------------------- manifest

struct Manifest {
  std::string command;
  Config config;
  std::map<std::string, Coord> bounds;
  std::map<std::string, double> seconds;
  std::vector<std::string> outputs;
  std::vector<Report> checks;
};

std::string manifest_json(const Manifest& m);
std::string_view library_version();

}  // namespace strongmark
