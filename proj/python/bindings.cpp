// Python module `strongmark._strongmark`. Points cross the boundary as
// tuples of ints; big slanted constants as Python ints via their decimal text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "strongmark/applications.hpp"
#include "strongmark/io.hpp"
#include "strongmark/multiples.hpp"
#include "strongmark/rect_markers.hpp"
#include "strongmark/shift_sim.hpp"
#include "strongmark/slanted.hpp"
#include "strongmark/verify.hpp"

namespace py = pybind11;
using namespace strongmark;

namespace {

py::int_ big(const BigInt& v) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10))); }

std::vector<Point> points_of(const MarkerSet& M) {
  std::vector<Point> out;
  out.reserve(M.size());
  for (std::size_t k = 0; k < M.size(); ++k) out.push_back(M.point(k));
  return out;
}

MarkerSet markers_from(int n, Coord d, const std::vector<Point>& pts) {
  MarkerSet M(n, d);
  for (const auto& p : pts) {
    if (static_cast<int>(p.size()) != n) throw Error(ErrorCode::DimensionMismatch, "point of wrong dimension");
    M.add(p);
  }
  M.normalize();
  return M;
}

template <class F>
std::string text_of(F&& write) {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_strongmark, m) {
  m.doc() = "Strong marker sets on Z^n";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Rect>(m, "Rect")
      .def(py::init<std::vector<Coord>, std::vector<Coord>>(), py::arg("lo"), py::arg("hi"))
      .def_property_readonly("lo", py::overload_cast<>(&Rect::lo, py::const_))
      .def_property_readonly("hi", py::overload_cast<>(&Rect::hi, py::const_))
      .def_property_readonly("dim", &Rect::dim)
      .def("side", &Rect::side)
      .def("cell_count", &Rect::cell_count)
      .def("__eq__", [](const Rect& a, const Rect& b) { return a == b; })
      .def("__repr__", [](const Rect& r) { return "Rect" + to_string(r); });

  py::class_<HitBound>(m, "HitBound")
      .def_readonly("label", &HitBound::label)
      .def_readonly("a_max", &HitBound::a_max)
      .def_readonly("b_max", &HitBound::b_max);

  py::class_<MarkerSet>(m, "MarkerSet")
      .def(py::init([](int n, Coord d, const std::vector<Point>& pts) { return markers_from(n, d, pts); }), py::arg("n"),
           py::arg("d"), py::arg("points") = std::vector<Point>{})
      .def_property_readonly("dim", &MarkerSet::dim)
      .def_property_readonly("spacing", &MarkerSet::spacing)
      .def_readonly("bounds", &MarkerSet::bounds)
      .def("points", &points_of)
      .def("__len__", &MarkerSet::size)
      .def("__contains__", [](const MarkerSet& M, const Point& x) { return M.contains(x); })
      .def("__eq__", [](const MarkerSet& a, const MarkerSet& b) { return a == b; })
      .def("to_text", [](const MarkerSet& M) { return text_of([&](std::ostream& o) { write_markers(o, M); }); })
      .def_static("from_text", [](const std::string& s) {
        std::istringstream in(s);
        return read_markers(in);
      });

  py::class_<World>(m, "World")
      .def_static("torus", &World::torus, py::arg("L"))
      .def_static("window", &World::window, py::arg("L"), py::arg("margin") = 0)
      .def_readonly("n", &World::n)
      .def_readonly("L", &World::L)
      .def_readonly("margin", &World::margin)
      .def_property_readonly("is_torus", &World::is_torus)
      .def("cell_count", &World::cell_count);

  py::enum_<TilingStyle>(m, "TilingStyle").value("Grid", TilingStyle::Grid).value("Brick", TilingStyle::Brick);

  py::class_<Tiling>(m, "Tiling")
      .def_property_readonly("world", &Tiling::world)
      .def_property_readonly("regions", &Tiling::regions)
      .def("__len__", &Tiling::size)
      .def("violations", &Tiling::violations)
      .def("to_text", [](const Tiling& t) { return text_of([&](std::ostream& o) { write_tiling(o, t); }); })
      .def_static("from_text", [](const std::string& s) {
        std::istringstream in(s);
        return read_tiling(in);
      });
  m.def("build_tiling", &build_tiling, py::arg("world"), py::arg("d"), py::arg("style") = TilingStyle::Brick,
        py::arg("seed") = 0);

  py::class_<Report>(m, "Report")
      .def_readonly("check", &Report::check)
      .def_readonly("passed", &Report::pass)
      .def_readonly("worst", &Report::worst)
      .def_readonly("worst_b", &Report::worst_b)
      .def_readonly("bound", &Report::bound)
      .def_readonly("witness", &Report::witness)
      .def_readonly("message", &Report::message)
      .def_readonly("checked", &Report::checked)
      .def_readonly("violations", &Report::violations)
      .def("__bool__", [](const Report& r) { return r.pass; })
      .def("to_text", [](const Report& r) { return text_of([&](std::ostream& o) { write_report(o, r); }); });

  // schedules
  py::class_<RectSchedule>(m, "RectSchedule")
      .def_readonly("n", &RectSchedule::n)
      .def_readonly("d0", &RectSchedule::d0)
      .def_readonly("d", &RectSchedule::d)
      .def_readonly("N", &RectSchedule::N)
      .def_readonly("D0", &RectSchedule::D0)
      .def_readonly("thickness", &RectSchedule::thickness)
      .def_readonly("kind", &RectSchedule::kind);
  py::class_<ShiftSchedule>(m, "ShiftSchedule")
      .def_readonly("rect", &ShiftSchedule::rect)
      .def_readonly("N", &ShiftSchedule::N)
      .def_readonly("D1", &ShiftSchedule::D1)
      .def_readonly("D", &ShiftSchedule::D);
  m.def("minimal_rect_schedule", [](int n, Coord d0) { return minimal_rect_schedule(n, d0); });
  m.def("paper_rect_schedule", &paper_rect_schedule);
  m.def("minimal_shift_schedule", &minimal_shift_schedule);
  m.def("paper_shift_schedule", &paper_shift_schedule);

  // constructions
  m.def("axis_marker", &axis_marker, py::arg("r"), py::arg("axis"), py::arg("d"));
  m.def("multiple_marker", &multiple_marker, py::arg("r"), py::arg("axis"), py::arg("d"), py::arg("alpha"));
  m.def("D_single", &D_single);
  m.def("strong_rect_markers", [](const Rect& r, const RectSchedule& s) { return strong_rect_markers(r, s).markers; });
  m.def("strong_shift_markers", &strong_shift_markers, py::arg("tiling"), py::arg("schedule"));
  m.def("slanted_constants", [](int n, Coord d, const Point& v, int axis) {
    const SlantedConstants c = slanted_constants(n, d, v, axis);
    py::dict out;
    py::list h, Ht;
    for (const auto& x : c.h) h.append(big(x));
    for (const auto& x : c.Ht) Ht.append(big(x));
    out["alpha"] = big(c.alpha);
    out["h"] = h;
    out["Ht"] = Ht;
    out["H"] = big(c.H);
    return out;
  });
  m.def("slanted_delta", [](int n, Coord d, const Point& v) { return big(slanted_delta(n, d, v)); });
  m.def("slanted_marker", &slanted_marker, py::arg("S"), py::arg("v"), py::arg("axis"), py::arg("d"));

  py::class_<GeneralParams>(m, "GeneralParams")
      .def_readonly("d0", &GeneralParams::d0)
      .def_readonly("schedule", &GeneralParams::sched)
      .def_readonly("lower", &GeneralParams::lower)
      .def_readonly("Delta", &GeneralParams::Delta)
      .def_readonly("q", &GeneralParams::q)
      .def_readonly("Delta_t", &GeneralParams::Delta_t)
      .def_readonly("B", &GeneralParams::B);
  m.def("general_parameters", &general_parameters, py::arg("n"), py::arg("d0"), py::arg("generators"),
        py::arg("paper_schedule") = false);

  // checks
  m.def("check_spacing", py::overload_cast<const MarkerSet&, Coord, const World&>(&check_spacing), py::arg("M"),
        py::arg("d"), py::arg("world"));
  m.def("check_spacing_flat", py::overload_cast<const MarkerSet&, Coord>(&check_spacing), py::arg("M"), py::arg("d"));
  m.def("check_axis_hitting", py::overload_cast<const MarkerSet&, const World&, int, Coord>(&check_axis_hitting),
        py::arg("M"), py::arg("world"), py::arg("axis"), py::arg("bound"));
  m.def("check_axis_hitting_rect",
        py::overload_cast<const MarkerSet&, const Rect&, int, std::optional<Coord>>(&check_axis_hitting), py::arg("M"),
        py::arg("domain"), py::arg("axis"), py::arg("bound") = std::nullopt);
  m.def("check_general_hitting",
        py::overload_cast<const MarkerSet&, const World&, const Point&, Coord>(&check_general_hitting), py::arg("M"),
        py::arg("world"), py::arg("g"), py::arg("bound"));
  m.def("brute_min_marker",
        [](const Rect& r, Coord d, const std::vector<Point>& dirs, std::uint64_t cap) {
          const BruteResult b = brute_min_marker(r, d, dirs, cap);
          return py::make_tuple(b.size ? py::object(py::int_(*b.size)) : py::none(), b.witness);
        },
        py::arg("r"), py::arg("d"), py::arg("directions"), py::arg("cap") = 5'000'000);

  // applications
  py::class_<EdgeColoring>(m, "EdgeColoring")
      .def_readonly("world", &EdgeColoring::world)
      .def_readonly("generators", &EdgeColoring::gens)
      .def("color", [](const EdgeColoring& c, const Point& x, std::size_t j) { return int(c.at(x, j)); })
      .def("colors_used", [](const EdgeColoring& c) {
        std::vector<int> seen(256, 0);
        for (auto v : c.color) seen[v] = 1;
        std::vector<int> out;
        for (int k = 1; k < 256; ++k)
          if (seen[k]) out.push_back(k);
        return out;
      });
  m.def("offset_color", &offset_color, py::arg("a"), py::arg("b"), py::arg("j"), py::arg("m"));
  m.def("edge_coloring", &edge_coloring, py::arg("world"), py::arg("M"), py::arg("keep_offsets") = false);
  m.def("general_edge_coloring", &general_edge_coloring, py::arg("world"), py::arg("generators"), py::arg("M"),
        py::arg("keep_offsets") = false);
  m.def("check_coloring", &check_coloring, py::arg("coloring"), py::arg("max_colors"));

  py::class_<TreeSection>(m, "TreeSection")
      .def_readonly("k", &TreeSection::k)
      .def_readonly("parent", &TreeSection::parent)
      .def_property_readonly("markers", [](const TreeSection& t) { return points_of(t.markers); })
      .def("edges", &TreeSection::edges);
  py::class_<TreeReport>(m, "TreeReport")
      .def_readonly("report", &TreeReport::report)
      .def_readonly("interior", &TreeReport::interior)
      .def_readonly("truncated", &TreeReport::truncated)
      .def_readonly("unique_parent", &TreeReport::unique_parent)
      .def_readonly("multi_parent", &TreeReport::multi_parent)
      .def_readonly("cycles", &TreeReport::cycles)
      .def_readonly("complete", &TreeReport::complete)
      .def_readonly("cocomplete", &TreeReport::cocomplete)
      .def_readonly("max_degree", &TreeReport::max_degree)
      .def_readonly("warnings", &TreeReport::warnings);
  m.def("tree_section", &tree_section, py::arg("world"), py::arg("M"));
  m.def("verify_tree", &verify_tree, py::arg("tree"), py::arg("degrees") = false);

  m.attr("__version__") = std::string(library_version());
}
