// strongmark: build, colour, verify and draw strong marker sets from the shell.
//
// Exit status: 0 success, 1 a check failed, 2 usage or input error,
// 3 the library refused the request.

#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "strongmark/applications.hpp"
#include "strongmark/io.hpp"
#include "strongmark/multiples.hpp"
#include "strongmark/rect_markers.hpp"
#include "strongmark/shift_sim.hpp"
#include "strongmark/slanted.hpp"
#include "strongmark/verify.hpp"

namespace fs = std::filesystem;
using namespace strongmark;

namespace {

struct Options {
  std::string config_file;
  std::optional<int> n;
  std::optional<Coord> d0;
  std::optional<std::string> schedule, style, mode, generators, alpha, L;
  std::optional<std::uint64_t> seed;
  std::optional<Coord> regions, margin, side;
  std::string out = ".";
  std::string markers_file, tiling_file;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("-c,--config", o.config_file, "key=value run configuration");
  app->add_option("--n", o.n, "dimension");
  app->add_option("--d0", o.d0, "spacing");
  app->add_option("--schedule", o.schedule, "paper | minimal | custom");
  app->add_option("--style", o.style, "grid | brick");
  app->add_option("--mode", o.mode, "torus | window");
  app->add_option("--seed", o.seed, "tiling seed");
  app->add_option("--generators", o.generators, "e.g. \"(1,0);(0,1);(1,1)\"");
  app->add_option("--alpha", o.alpha, "axis multiples, axes separated by ';', e.g. \"2;3\"");
  app->add_option("--L", o.L, "world size, comma separated");
  app->add_option("--regions", o.regions, "regions per axis when L is not given");
  app->add_option("--margin", o.margin, "window margin excluded from hitting checks");
  app->add_option("--side", o.side, "rectangle side length");
  app->add_option("-o,--out", o.out, "output directory");
}

Config load(const Options& o) {
  Config c;
  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    if (!in) throw Error(ErrorCode::Parse, "cannot read " + o.config_file);
    c = parse_config(in);
  }
  if (o.n) c.n = *o.n;
  if (o.d0) c.d0 = *o.d0;
  if (o.schedule) {
    if (*o.schedule != "paper" && *o.schedule != "minimal" && *o.schedule != "custom")
      throw Error(ErrorCode::Parse, "schedule must be paper, minimal or custom");
    c.schedule = *o.schedule;
  }
  if (o.style) c.style = *o.style == "grid" ? TilingStyle::Grid : *o.style == "brick" ? TilingStyle::Brick : throw Error(ErrorCode::Parse, "style must be grid or brick");
  if (o.mode) c.mode = *o.mode == "torus" ? WorldMode::Torus : *o.mode == "window" ? WorldMode::Window : throw Error(ErrorCode::Parse, "mode must be torus or window");
  if (o.seed) c.seed = *o.seed;
  if (o.generators) c.generators = parse_points(*o.generators);
  if (o.alpha) c.extra["alpha"] = *o.alpha;
  if (o.L) c.extra["L"] = *o.L;
  if (o.regions) c.extra["regions"] = std::to_string(*o.regions);
  if (o.margin) c.extra["margin"] = std::to_string(*o.margin);
  if (o.side) c.extra["side"] = std::to_string(*o.side);
  return c;
}

AlphaTable alpha_table(const Config& c) {
  AlphaTable t(c.n, std::vector<Coord>{1});
  auto it = c.extra.find("alpha");
  if (it == c.extra.end()) return t;
  std::stringstream axes(it->second);
  std::string part;
  for (int i = 0; std::getline(axes, part, ';'); ++i) {
    if (i >= c.n) throw Error(ErrorCode::Parse, "alpha lists more axes than n");
    t[i].clear();
    std::stringstream vals(part);
    std::string v;
    while (std::getline(vals, v, ',')) t[i].push_back(std::stoll(v));
  }
  return t;
}

RectSchedule rect_schedule(const Config& c) {
  if (c.schedule == "paper") return paper_rect_schedule(c.n, c.d0);
  if (c.schedule == "custom") {
    std::vector<Coord> d{c.d0};
    d.insert(d.end(), c.d.begin(), c.d.end());
    return custom_rect_schedule(c.n, c.d0, d);
  }
  return minimal_rect_schedule(c.n, c.d0);
}

ShiftSchedule shift_schedule(const Config& c) {
  if (c.schedule == "paper") return paper_shift_schedule(c.n, c.d0);
  return shift_schedule_from(rect_schedule(c));
}

/// Torus or window of the configured size; otherwise `regions` regions of side d per axis.
World world_for(const Config& c, Coord d, Coord default_margin) {
  std::vector<Coord> L = c.get_ints("L");
  if (L.empty()) L.assign(c.n, c.get_int("regions", 2) * (d + 1));
  if (L.size() == 1 && c.n > 1) L.assign(c.n, L[0]);
  if (static_cast<int>(L.size()) != c.n) throw Error(ErrorCode::Parse, "L needs n entries");
  return c.mode == WorldMode::Torus ? World::torus(L) : World::window(L, c.get_int("margin", default_margin));
}

class Run {
 public:
  Run(std::string command, const Config& c, const std::string& out) : dir_(out) {
    m_.command = std::move(command);
    m_.config = c;
    fs::create_directories(dir_);
  }
  std::ofstream file(const std::string& name) {
    m_.outputs.push_back(name);
    return std::ofstream(dir_ / name);
  }
  void time(const std::string& what, double s) { m_.seconds[what] = s; }
  void bound(const std::string& what, Coord v) { m_.bounds[what] = v; }
  void check(const Report& r) {
    m_.checks.push_back(r);
    std::cout << "check " << r.check << ": " << (r.pass ? "PASS" : "FAIL");
    if (r.worst != 0 || r.worst_b != 0) std::cout << " worst=" << (r.worst == kInfinity ? "inf" : std::to_string(r.worst));
    std::cout << '\n';
    if (!r.pass) {
      std::cout << "  " << r.message << "\n  witness=" << format_points(r.witness) << '\n';
      failed_ = true;
    }
    std::string name = r.check;
    for (char& ch : name)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-') ch = '_';
    auto f = file("report_" + std::to_string(m_.checks.size()) + "_" + name + ".txt");
    write_report(f, r);
  }
  int finish() {
    std::ofstream(dir_ / "manifest.json") << manifest_json(m_);
    return failed_ ? 1 : 0;
  }

 private:
  fs::path dir_;
  Manifest m_;
  bool failed_ = false;
};

template <class F>
auto timed(Run& run, const std::string& what, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto v = f();
  run.time(what, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return v;
}

MarkerSet read_markers_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot read " + path);
  return read_markers(in);
}

// ------------------------------------------------------------------ commands

int cmd_schedule(const Options& o) {
  const Config c = load(o);
  Run run("schedule", c, o.out);
  const RectSchedule r = rect_schedule(c);
  const ShiftSchedule s = shift_schedule(c);
  std::cout << "n=" << c.n << " d0=" << c.d0 << " kind=" << r.kind << '\n';
  for (int i = 1; i <= c.n; ++i) std::cout << "d_" << i << "=" << r.d[i] << " N_" << i << "=" << r.N[i] << '\n';
  std::cout << "thickness=" << r.thickness << "\nD0=" << r.D0 << "\nD1=" << s.D1 << "\nD=" << s.D << '\n';
  run.bound("D0", r.D0);
  run.bound("D1", s.D1);
  run.bound("D", s.D);
  Report rep;
  rep.check = "schedule";
  for (const auto& v : rect_schedule_violations(r)) rep.fail({}, v);
  run.check(rep);
  return run.finish();
}

int cmd_construct(const std::string& what, const Options& o) {
  const Config c = load(o);
  Run run("construct " + what, c, o.out);
  MarkerSet M;

  if (what == "rect" || what == "rect-mult") {
    const AlphaTable table = alpha_table(c);
    const RectSchedule s = what == "rect" ? rect_schedule(c) : minimal_multiples_schedule(c.n, c.d0, table);
    const Coord side = c.get_int("side", s.D0);
    const Rect r = Rect::cube(c.n, 0, side);
    M = timed(run, "construct", [&] {
      return what == "rect" ? strong_rect_markers(r, s).markers : strong_rect_markers_multiples(r, s, table).markers;
    });
    run.bound("D0", s.D0);
    run.check(timed(run, "spacing", [&] { return check_spacing(M, c.d0); }));
    for (int i = 0; i < c.n; ++i)
      for (Coord a : table[i]) {
        Point g(c.n, 0);
        g[i] = a;
        run.check(timed(run, "hitting", [&] { return check_general_hitting(M, r, g); }));
      }
  } else if (what == "shift" || what == "shift-mult") {
    const AlphaTable table = alpha_table(c);
    const ShiftSchedule s = what == "shift" ? shift_schedule(c) : minimal_shift_multiples_schedule(c.n, c.d0, table);
    const World w = world_for(c, s.D1, s.D);
    const Tiling t = timed(run, "tiling", [&] { return build_tiling(w, s.D1, c.style, c.seed); });
    M = timed(run, "construct", [&] {
      return what == "shift" ? strong_shift_markers(t, s) : strong_shift_markers_multiples(t, s, table);
    });
    auto tf = run.file("tiling.txt");
    write_tiling(tf, t);
    run.bound("D1", s.D1);
    run.bound("D", s.D);
    run.check(timed(run, "spacing", [&] { return check_spacing(M, c.d0, w); }));
    for (int i = 0; i < c.n; ++i)
      for (Coord a : table[i]) {
        Point g(c.n, 0);
        g[i] = a;
        run.check(timed(run, "hitting", [&] { return check_general_hitting(M, w, g, s.D); }));
      }
  } else if (what == "general") {
    if (c.generators.empty()) throw Error(ErrorCode::Parse, "general needs generators=");
    const GeneralParams p = general_parameters(c.n, c.d0, c.generators, c.schedule == "paper");
    const World w = c.has("L") ? world_for(c, p.Delta_t, p.B) : general_torus(p, c.get_int("regions", 2));
    const GeneralResult g = timed(run, "construct", [&] { return general_markers(w, p, c.style, c.seed); });
    M = g.markers;
    auto tf = run.file("tiling.txt");
    write_tiling(tf, g.coarse);
    run.bound("D1", p.sched.D1);
    run.bound("Delta", p.Delta);
    run.bound("B", p.B);
    std::cout << "D1=" << p.sched.D1 << " q=" << p.q << " Delta=" << p.Delta << " B=" << p.B << " L=" << w.L[0] << '\n';
    run.check(timed(run, "spacing", [&] { return check_spacing(M, c.d0, w); }));
    for (const auto& v : c.generators) run.check(timed(run, "hitting", [&] { return check_general_hitting(M, w, v, p.B); }));
  } else {
    throw CLI::ValidationError("construct", "unknown kind " + what);
  }
  std::cout << "markers=" << M.size() << '\n';
  auto mf = run.file("markers.txt");
  write_markers(mf, M);
  return run.finish();
}

World world_from_config(const Config& c) {
  std::vector<Coord> L = c.get_ints("L");
  if (L.empty()) throw Error(ErrorCode::Parse, "L= is required");
  if (L.size() == 1 && c.n > 1) L.assign(c.n, L[0]);
  return c.mode == WorldMode::Torus ? World::torus(L) : World::window(L, c.get_int("margin", 0));
}

void draw_coloring(Svg& svg, const EdgeColoring& col) {
  const std::size_t m = col.gens.size();
  for (std::size_t i = 0; i * m < col.color.size(); ++i) {
    const Point x = col.cell(i);
    for (std::size_t j = 0; j < m; ++j) {
      if (col.color[i * m + j] == 0) continue;
      Point y = x;
      for (int k = 0; k < col.world.n; ++k) y[k] += col.gens[j][k];
      if (col.world.box().contains(y)) svg.edge(x, y, col.color[i * m + j]);
    }
  }
}

int cmd_color(const std::string& what, const Options& o) {
  const Config c = load(o);
  Run run("color " + what, c, o.out);
  const MarkerSet M = read_markers_file(o.markers_file);
  const World w = world_from_config(c);
  EdgeColoring col;
  if (what == "standard") {
    col = timed(run, "color", [&] { return edge_coloring(w, M); });
  } else if (what == "general") {
    if (c.generators.empty()) throw Error(ErrorCode::Parse, "general colouring needs generators=");
    col = timed(run, "color", [&] { return general_edge_coloring(w, c.generators, M); });
  } else {
    throw CLI::ValidationError("color", "unknown kind " + what);
  }
  const int colors = 2 * static_cast<int>(col.gens.size()) + 1;
  run.check(timed(run, "check", [&] { return check_coloring(col, colors); }));
  auto f = run.file("coloring.txt");
  write_coloring(f, col);
  if (w.n == 2 && w.cell_count() <= 250000) {
    Svg svg(0, 0, w.L[0], w.L[1]);
    draw_coloring(svg, col);
    for (std::size_t k = 0; k < M.size(); ++k) svg.marker(M[k][0], M[k][1]);
    run.file("coloring.svg") << svg.str();
  }
  return run.finish();
}

void draw_tree(Svg& svg, const TreeSection& t) {
  for (const auto& e : t.edges()) svg.edge(e[0], e[1], 1);
  for (std::size_t k = 0; k < t.markers.size(); ++k) svg.marker(t.markers[k][0], t.markers[k][1]);
}

int cmd_tree(const Options& o, bool degrees) {
  Config c = load(o);
  c.mode = WorldMode::Window;
  Run run("tree", c, o.out);
  const MarkerSet M = read_markers_file(o.markers_file);
  const World w = world_from_config(c);
  const TreeSection t = timed(run, "build", [&] { return tree_section(w, M); });
  const TreeReport rep = timed(run, "verify", [&] { return verify_tree(t, degrees); });
  std::cout << "interior=" << rep.interior << " truncated=" << rep.truncated << " unique_parent=" << rep.unique_parent
            << " cycles=" << rep.cycles << " complete=" << rep.complete << " cocomplete=" << rep.cocomplete << '\n';
  for (const auto& wmsg : rep.warnings) std::cout << "warning: " << wmsg << '\n';
  run.check(rep.report);
  auto f = run.file("tree.txt");
  write_tree(f, t);
  return run.finish();
}

int cmd_verify(const std::string& property, const Options& o, const std::optional<Coord>& bound, int axis,
               const std::string& gen) {
  const Config c = load(o);
  Run run("verify " + property, c, o.out);
  if (property == "tiling") {
    std::ifstream in(o.tiling_file);
    if (!in) throw Error(ErrorCode::Parse, "cannot read " + o.tiling_file);
    const Tiling t = read_tiling(in);
    Report r;
    r.check = "tiling";
    for (const auto& v : t.violations()) r.fail({}, v);
    run.check(r);
    return run.finish();
  }
  const MarkerSet M = read_markers_file(o.markers_file);
  const World w = world_from_config(c);
  const Coord d = c.d0 > 0 ? c.d0 : M.spacing();
  if (property == "spacing") {
    run.check(check_spacing(M, d, w));
  } else if (property == "axis-hitting") {
    if (!bound) throw CLI::ValidationError("verify", "--bound is required");
    for (int i = 0; i < w.n; ++i)
      if (axis < 0 || axis == i) run.check(check_axis_hitting(M, w, i, *bound));
  } else if (property == "general-hitting") {
    if (!bound) throw CLI::ValidationError("verify", "--bound is required");
    const auto gens = gen.empty() ? c.generators : parse_points(gen);
    for (const auto& g : gens) run.check(check_general_hitting(M, w, g, *bound));
  } else {
    throw CLI::ValidationError("verify", "unknown property " + property);
  }
  return run.finish();
}

int cmd_render(const std::string& what, const Options& o, const std::string& v_text, const std::string& core_text) {
  const Config c = load(o);
  Run run("render " + what, c, o.out);
  if (what == "corner") {
    const auto pts = parse_points(core_text);
    if (pts.size() != 2) throw CLI::ValidationError("render", "--core needs \"(lo);(hi)\"");
    const Rect R0(pts[0], pts[1]);
    const Point v = parse_points(v_text).at(0);
    const CornerPackages cp = corner_packages(R0, v, c.d0);
    const Rect& R1 = cp.outer;
    Svg svg(R1.lo(0) - 2, R1.lo(1) - 2, R1.side(0) + 5, R1.side(1) + 5);
    for (const auto& p : cp.packages) {
      // the package's base swept along v up to its height
      const int flat = p.axis, other = 1 - p.axis;
      const double t = static_cast<double>(p.height) / std::abs(static_cast<double>(p.v[flat]));
      std::array<double, 2> a{}, b{};
      a[flat] = static_cast<double>(p.base.lo(flat));
      a[other] = static_cast<double>(p.base.lo(other));
      b[flat] = a[flat];
      b[other] = static_cast<double>(p.base.hi(other));
      auto shift = [&](std::array<double, 2> q) {
        return std::array<double, 2>{q[0] + t * static_cast<double>(p.v[0]), q[1] + t * static_cast<double>(p.v[1])};
      };
      svg.polygon({a, b, shift(b), shift(a)});
    }
    svg.rect(R0, "#000");
    svg.rect(R1, "#888");
    for (std::size_t k = 0; k < cp.markers.size(); ++k) svg.marker(cp.markers[k][0], cp.markers[k][1]);
    run.file("corner.svg") << svg.str();
    return run.finish();
  }
  const MarkerSet M = read_markers_file(o.markers_file);
  const World w = world_from_config(c);
  if (w.n != 2) throw CLI::ValidationError("render", "only n = 2 worlds are drawn");
  Svg svg(0, 0, w.L[0], w.L[1]);
  if (what == "markers") {
    if (!o.tiling_file.empty()) {
      std::ifstream in(o.tiling_file);
      const Tiling t = read_tiling(in);
      for (const auto& r : t.regions()) svg.rect(r);
    }
    for (std::size_t k = 0; k < M.size(); ++k) svg.marker(M[k][0], M[k][1]);
  } else if (what == "tree") {
    draw_tree(svg, tree_section(World::window(w.L), M));
  } else if (what == "coloring") {
    draw_coloring(svg, c.generators.empty() ? edge_coloring(w, M) : general_edge_coloring(w, c.generators, M));
    for (std::size_t k = 0; k < M.size(); ++k) svg.marker(M[k][0], M[k][1]);
  } else {
    throw CLI::ValidationError("render", "unknown picture " + what);
  }
  run.file(what + ".svg") << svg.str();
  return run.finish();
}

int cmd_oracle(const Options& o, const std::string& lo, const std::string& hi, const std::string& dirs, std::uint64_t cap) {
  const Config c = load(o);
  Run run("oracle", c, o.out);
  const auto a = parse_points("(" + lo + ")").at(0), b = parse_points("(" + hi + ")").at(0);
  const BruteResult r = timed(run, "search", [&] { return brute_min_marker(Rect(a, b), c.d0, parse_points(dirs), cap); });
  if (!r.size) {
    std::cout << "Infeasible (" << r.nodes << " nodes)\n";
    return run.finish();
  }
  std::cout << "minimum=" << *r.size << " (" << r.nodes << " nodes)\n";
  MarkerSet W(static_cast<int>(a.size()), c.d0);
  for (const auto& p : r.witness) W.add(p);
  W.normalize();
  auto f = run.file("witness.txt");
  write_markers(f, W);
  return run.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong marker sets on Z^n: construction, colouring, tree sections, verification"};
  app.require_subcommand(1);
  Options o;
  std::string kind, property;
  std::optional<Coord> bound;
  int axis = -1;
  std::string gen, v_text = "(1,1)", core_text, lo, hi, dirs = "(1,0)";
  std::uint64_t cap = 5'000'000;
  bool degrees = false;

  auto* sched = app.add_subcommand("schedule", "print and check the constant schedules");
  add_common(sched, o);

  auto* cons = app.add_subcommand("construct", "build a marker set and verify it");
  cons->add_option("kind", kind, "rect | rect-mult | shift | shift-mult | general")->required();
  add_common(cons, o);

  auto* color = app.add_subcommand("color", "edge colouring from a marker file");
  color->add_option("kind", kind, "standard | general")->required();
  color->add_option("-m,--markers", o.markers_file, "marker file")->required();
  add_common(color, o);

  auto* tree = app.add_subcommand("tree", "tree section from a marker file (window)");
  tree->add_option("-m,--markers", o.markers_file, "marker file")->required();
  tree->add_flag("--degrees", degrees, "also build the explicit graph and check degrees");
  add_common(tree, o);

  auto* ver = app.add_subcommand("verify", "check one property");
  ver->add_option("property", property, "spacing | axis-hitting | general-hitting | tiling")->required();
  ver->add_option("-m,--markers", o.markers_file, "marker file");
  ver->add_option("-t,--tiling", o.tiling_file, "tiling file");
  ver->add_option("--bound", bound, "hitting bound");
  ver->add_option("--axis", axis, "0-based axis; all axes when omitted");
  ver->add_option("--generator", gen, "generators to check, e.g. \"(1,1)\"");
  add_common(ver, o);

  auto* ren = app.add_subcommand("render", "draw a 2-D instance as SVG");
  ren->add_option("kind", kind, "markers | tree | coloring | corner")->required();
  ren->add_option("-m,--markers", o.markers_file, "marker file");
  ren->add_option("-t,--tiling", o.tiling_file, "tiling file drawn under the markers");
  ren->add_option("--v", v_text, "direction for corner packages");
  ren->add_option("--core", core_text, "core rectangle as \"(lo);(hi)\"");
  add_common(ren, o);

  auto* orc = app.add_subcommand("oracle", "exhaustive least marker set in a small rectangle");
  orc->add_option("--lo", lo, "lower corner, comma separated")->required();
  orc->add_option("--hi", hi, "upper corner, comma separated")->required();
  orc->add_option("--directions", dirs, "hitting directions");
  orc->add_option("--cap", cap, "node budget");
  add_common(orc, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*sched) return cmd_schedule(o);
    if (*cons) return cmd_construct(kind, o);
    if (*color) return cmd_color(kind, o);
    if (*tree) return cmd_tree(o, degrees);
    if (*ver) return cmd_verify(property, o, bound, axis, gen);
    if (*ren) return cmd_render(kind, o, v_text, core_text);
    if (*orc) return cmd_oracle(o, lo, hi, dirs, cap);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Parse ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
