#include "strongmark/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace strongmark {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
bool to_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

template <class T>
T number(std::string_view s, std::size_t line, const char* what) {
  T v{};
  if (!to_number(s, v)) parse_error(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = s.find(sep, start);
    out.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// "key=value" tokens of a header line after its magic words.
std::map<std::string, std::string, std::less<>> header_fields(const std::vector<std::string_view>& w, std::size_t from,
                                                             std::size_t line) {
  std::map<std::string, std::string, std::less<>> out;
  for (std::size_t k = from; k < w.size(); ++k) {
    const auto eq = w[k].find('=');
    if (eq == std::string_view::npos) parse_error(line, "expected key=value, got '" + std::string(w[k]) + "'");
    out[std::string(w[k].substr(0, eq))] = std::string(w[k].substr(eq + 1));
  }
  return out;
}

const std::string& field(const std::map<std::string, std::string, std::less<>>& f, const char* key, std::size_t line) {
  auto it = f.find(key);
  if (it == f.end()) parse_error(line, std::string("missing ") + key + "=");
  return it->second;
}

std::vector<Coord> coord_list(std::string_view s, std::size_t line) {
  std::vector<Coord> out;
  for (auto part : split(s, ',')) out.push_back(number<Coord>(part, line, "integer"));
  return out;
}

std::string join(const std::vector<Coord>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

std::string coord_text(Coord v) { return v == kInfinity ? "inf" : std::to_string(v); }

Coord coord_value(std::string_view s, std::size_t line) {
  return trim(s) == "inf" ? kInfinity : number<Coord>(s, line, "integer");
}

struct Lines {
  explicit Lines(std::istream& s) : in(s) {}
  std::istream& in;
  std::size_t no = 0;
  std::string text;
  /// Next line that is not blank.
  bool next() {
    while (std::getline(in, text)) {
      ++no;
      if (!trim(text).empty()) return true;
    }
    return false;
  }
};

Point point_words(const std::vector<std::string_view>& w, std::size_t from, int n, std::size_t line) {
  if (w.size() < from + static_cast<std::size_t>(n)) parse_error(line, "too few coordinates");
  Point p(n);
  for (int k = 0; k < n; ++k) p[k] = number<Coord>(w[from + k], line, "coordinate");
  return p;
}

World world_from(const std::map<std::string, std::string, std::less<>>& f, int n, std::size_t line) {
  const std::string& mode = field(f, "mode", line);
  std::vector<Coord> L = coord_list(field(f, "L", line), line);
  if (static_cast<int>(L.size()) != n) parse_error(line, "L has the wrong number of entries");
  if (mode == "torus") return World::torus(L);
  if (mode == "window") return World::window(L);
  parse_error(line, "mode must be torus or window");
}

}  // namespace

// ------------------------------------------------------------------ markers

void write_markers(std::ostream& out, const MarkerSet& M) {
  MarkerSet S = M;
  if (!S.is_normalized()) S.normalize();
  out << "MARKERS v1 n=" << S.dim() << " d=" << S.spacing() << '\n';
  for (const auto& b : S.bounds) out << "BOUND " << b.label << ' ' << b.a_max << ' ' << b.b_max << '\n';
  for (std::size_t k = 0; k < S.size(); ++k) {
    const auto p = S[k];
    for (std::size_t j = 0; j < p.size(); ++j) out << (j ? " " : "") << p[j];
    out << '\n';
  }
}

MarkerSet read_markers(std::istream& in) {
  Lines ls(in);
  if (!ls.next()) parse_error(1, "empty marker file");
  const auto head = words(ls.text);
  if (head.size() < 2 || head[0] != "MARKERS" || head[1] != "v1") parse_error(ls.no, "expected 'MARKERS v1'");
  const auto f = header_fields(head, 2, ls.no);
  const int n = number<int>(field(f, "n", ls.no), ls.no, "dimension");
  const Coord d = number<Coord>(field(f, "d", ls.no), ls.no, "spacing");
  if (n < 0) parse_error(ls.no, "negative dimension");
  MarkerSet M(n, d);
  bool points = false;
  while (ls.next()) {
    const auto w = words(ls.text);
    if (w[0] == "BOUND") {
      if (points) parse_error(ls.no, "BOUND after the points");
      if (w.size() != 4) parse_error(ls.no, "BOUND needs a label and two integers");
      M.bounds.push_back({std::string(w[1]), number<Coord>(w[2], ls.no, "bound"), number<Coord>(w[3], ls.no, "bound")});
      continue;
    }
    points = true;
    if (w.size() != static_cast<std::size_t>(n)) parse_error(ls.no, "expected " + std::to_string(n) + " coordinates");
    M.add(point_words(w, 0, n, ls.no));
  }
  if (!M.is_normalized()) parse_error(ls.no, "points must be sorted and distinct");
  return M;
}

// ------------------------------------------------------------------ tilings

void write_tiling(std::ostream& out, const Tiling& t) {
  const World& w = t.world();
  out << "TILING v1 n=" << w.n << " mode=" << to_string(w.mode) << " L=" << join(w.L) << '\n';
  for (const auto& r : t.regions()) {
    for (int j = 0; j < w.n; ++j) {
      Coord hi = r.hi(j);
      if (w.is_torus() && hi >= w.L[j]) hi -= w.L[j];
      out << (j ? " " : "") << r.lo(j) << ' ' << hi;
    }
    out << '\n';
  }
}

Tiling read_tiling(std::istream& in) {
  Lines ls(in);
  if (!ls.next()) parse_error(1, "empty tiling file");
  const auto head = words(ls.text);
  if (head.size() < 2 || head[0] != "TILING" || head[1] != "v1") parse_error(ls.no, "expected 'TILING v1'");
  const auto f = header_fields(head, 2, ls.no);
  const int n = number<int>(field(f, "n", ls.no), ls.no, "dimension");
  const World w = world_from(f, n, ls.no);
  std::vector<Rect> regions;
  while (ls.next()) {
    const auto v = words(ls.text);
    if (v.size() != 2 * static_cast<std::size_t>(n)) parse_error(ls.no, "expected " + std::to_string(2 * n) + " integers");
    Point lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
      lo[j] = number<Coord>(v[2 * j], ls.no, "bound");
      hi[j] = number<Coord>(v[2 * j + 1], ls.no, "bound");
      if (lo[j] > hi[j]) {
        if (!w.is_torus()) parse_error(ls.no, "lo > hi in a window");
        hi[j] += w.L[j];
      }
    }
    regions.emplace_back(lo, hi);
  }
  return Tiling(w, std::move(regions));
}

// ------------------------------------------------------------------ config

std::string to_string(TilingStyle s) { return s == TilingStyle::Grid ? "grid" : "brick"; }
std::string to_string(WorldMode m) { return m == WorldMode::Torus ? "torus" : "window"; }

std::vector<Point> parse_points(std::string_view text) {
  std::vector<Point> out;
  text = trim(text);
  if (text.empty()) return out;
  for (auto part : split(text, ';')) {
    part = trim(part);
    if (part.size() < 2 || part.front() != '(' || part.back() != ')')
      throw Error(ErrorCode::Parse, "expected a point like (1,0), got '" + std::string(part) + "'");
    Point p;
    for (auto c : split(part.substr(1, part.size() - 2), ',')) {
      Coord v{};
      if (!to_number(c, v)) throw Error(ErrorCode::Parse, "bad coordinate in '" + std::string(part) + "'");
      p.push_back(v);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::string format_points(const std::vector<Point>& pts) {
  std::string s;
  for (std::size_t k = 0; k < pts.size(); ++k) s += (k ? ";" : "") + to_string(pts[k]);
  return s;
}

Coord Config::get_int(const std::string& key, Coord fallback) const {
  auto it = extra.find(key);
  if (it == extra.end()) return fallback;
  Coord v{};
  if (!to_number(std::string_view(it->second), v)) throw Error(ErrorCode::Parse, "key " + key + " needs an integer");
  return v;
}

std::vector<Coord> Config::get_ints(const std::string& key) const {
  auto it = extra.find(key);
  if (it == extra.end()) return {};
  std::vector<Coord> out;
  for (auto part : split(it->second, ',')) {
    Coord v{};
    if (!to_number(part, v)) throw Error(ErrorCode::Parse, "key " + key + " needs integers");
    out.push_back(v);
  }
  return out;
}

Config parse_config(std::istream& in) {
  Config c;
  std::string text;
  std::size_t no = 0;
  std::map<int, Coord> ds;
  while (std::getline(in, text)) {
    ++no;
    std::string_view s = text;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) parse_error(no, "expected key=value");
    const std::string key(trim(s.substr(0, eq)));
    const std::string_view value = trim(s.substr(eq + 1));
    if (key == "n") {
      c.n = number<int>(value, no, "n");
      if (c.n < 1) parse_error(no, "n must be positive");
    } else if (key == "d0") {
      c.d0 = number<Coord>(value, no, "d0");
    } else if (key == "schedule") {
      if (value != "paper" && value != "minimal" && value != "custom") parse_error(no, "schedule must be paper, minimal or custom");
      c.schedule = value;
    } else if (key.size() > 2 && key.rfind("d_", 0) == 0) {
      const int i = number<int>(std::string_view(key).substr(2), no, "schedule index");
      if (i < 1) parse_error(no, "schedule indices start at 1");
      ds[i] = number<Coord>(value, no, key.c_str());
    } else if (key == "style") {
      if (value == "grid") c.style = TilingStyle::Grid;
      else if (value == "brick") c.style = TilingStyle::Brick;
      else parse_error(no, "style must be grid or brick");
    } else if (key == "seed") {
      c.seed = number<std::uint64_t>(value, no, "seed");
    } else if (key == "mode") {
      if (value == "torus") c.mode = WorldMode::Torus;
      else if (value == "window") c.mode = WorldMode::Window;
      else parse_error(no, "mode must be torus or window");
    } else if (key == "generators") {
      try {
        c.generators = parse_points(value);
      } catch (const Error& e) {
        parse_error(no, e.what());
      }
    } else {
      c.extra[key] = std::string(value);
    }
  }
  int expect = 1;
  for (const auto& [i, v] : ds) {
    if (i != expect++) parse_error(no, "d_1.. must be consecutive");
    c.d.push_back(v);
  }
  return c;
}

Config parse_config_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_config(in);
}

void write_config(std::ostream& out, const Config& c) {
  out << "n=" << c.n << '\n' << "d0=" << c.d0 << '\n' << "schedule=" << c.schedule << '\n';
  for (std::size_t i = 0; i < c.d.size(); ++i) out << "d_" << i + 1 << '=' << c.d[i] << '\n';
  out << "style=" << to_string(c.style) << '\n' << "seed=" << c.seed << '\n' << "mode=" << to_string(c.mode) << '\n';
  if (!c.generators.empty()) out << "generators=" << format_points(c.generators) << '\n';
  for (const auto& [k, v] : c.extra) out << k << '=' << v << '\n';
}

// ------------------------------------------------------------------ reports

void write_report(std::ostream& out, const Report& r) {
  std::string msg = r.message;
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  out << "REPORT v1 check=" << r.check << " result=" << (r.pass ? "PASS" : "FAIL") << '\n';
  out << "worst=" << coord_text(r.worst) << '\n';
  out << "witness=" << format_points(r.witness) << '\n';
  out << "worst_b=" << coord_text(r.worst_b) << '\n';
  out << "bound=" << coord_text(r.bound) << '\n';
  out << "checked=" << r.checked << '\n';
  out << "violations=" << r.violations << '\n';
  out << "sampled=" << (r.sampled ? 1 : 0) << '\n';
  out << "message=" << msg << '\n';
}

Report read_report(std::istream& in) {
  Lines ls(in);
  if (!ls.next()) parse_error(1, "empty report");
  const auto head = words(ls.text);
  if (head.size() < 2 || head[0] != "REPORT" || head[1] != "v1") parse_error(ls.no, "expected 'REPORT v1'");
  const auto f = header_fields(head, 2, ls.no);
  Report r;
  r.check = field(f, "check", ls.no);
  const std::string& result = field(f, "result", ls.no);
  if (result != "PASS" && result != "FAIL") parse_error(ls.no, "result must be PASS or FAIL");
  r.pass = result == "PASS";
  while (ls.next()) {
    const std::string_view s = ls.text;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) parse_error(ls.no, "expected key=value");
    const std::string_view key = s.substr(0, eq), value = s.substr(eq + 1);
    if (key == "worst") r.worst = coord_value(value, ls.no);
    else if (key == "worst_b") r.worst_b = coord_value(value, ls.no);
    else if (key == "bound") r.bound = coord_value(value, ls.no);
    else if (key == "checked") r.checked = number<std::uint64_t>(value, ls.no, "count");
    else if (key == "violations") r.violations = number<std::uint64_t>(value, ls.no, "count");
    else if (key == "sampled") r.sampled = number<int>(value, ls.no, "flag") != 0;
    else if (key == "message") r.message = std::string(value);
    else if (key == "witness") {
      try {
        r.witness = parse_points(value);
      } catch (const Error& e) {
        parse_error(ls.no, e.what());
      }
    } else {
      parse_error(ls.no, "unknown report key '" + std::string(key) + "'");
    }
  }
  return r;
}

// ------------------------------------------------------------ colourings, trees

void write_coloring(std::ostream& out, const EdgeColoring& c) {
  const World& w = c.world;
  out << "COLORING v1 n=" << w.n << " mode=" << to_string(w.mode) << " L=" << join(w.L)
      << " generators=" << format_points(c.gens) << '\n';
  const std::size_t m = c.gens.size();
  for (std::size_t i = 0; i * m < c.color.size(); ++i) {
    bool any = false;
    for (std::size_t j = 0; j < m; ++j) any = any || c.color[i * m + j] != 0;
    if (!any) continue;
    const Point x = c.cell(i);
    for (int k = 0; k < w.n; ++k) out << x[k] << ' ';
    for (std::size_t j = 0; j < m; ++j) out << (j ? " " : "") << int(c.color[i * m + j]);
    out << '\n';
  }
}

EdgeColoring read_coloring(std::istream& in) {
  Lines ls(in);
  if (!ls.next()) parse_error(1, "empty colouring file");
  const auto head = words(ls.text);
  if (head.size() < 2 || head[0] != "COLORING" || head[1] != "v1") parse_error(ls.no, "expected 'COLORING v1'");
  const auto f = header_fields(head, 2, ls.no);
  const int n = number<int>(field(f, "n", ls.no), ls.no, "dimension");
  EdgeColoring c;
  c.world = world_from(f, n, ls.no);
  try {
    c.gens = parse_points(field(f, "generators", ls.no));
  } catch (const Error& e) {
    parse_error(ls.no, e.what());
  }
  const std::size_t m = c.gens.size();
  c.color.assign(static_cast<std::size_t>(c.world.cell_count()) * m, 0);
  while (ls.next()) {
    const auto v = words(ls.text);
    if (v.size() != static_cast<std::size_t>(n) + m) parse_error(ls.no, "wrong number of fields");
    const Point x = point_words(v, 0, n, ls.no);
    if (!c.world.box().contains(x)) parse_error(ls.no, "cell outside the world");
    for (std::size_t j = 0; j < m; ++j) {
      const int col = number<int>(v[n + j], ls.no, "colour");
      if (col < 0 || col > 255) parse_error(ls.no, "colour out of range");
      c.color[c.cell_index(x) * m + j] = static_cast<std::uint8_t>(col);
    }
  }
  return c;
}

void write_tree(std::ostream& out, const TreeSection& t) {
  const World& w = t.world;
  out << "TREE v1 n=" << w.n << " mode=" << to_string(w.mode) << " L=" << join(w.L) << '\n';
  for (std::size_t i = 0; i < t.markers.size(); ++i) {
    const auto x = t.markers[i];
    for (int k = 0; k < w.n; ++k) out << x[k] << ' ';
    out << t.k[i];
    if (t.parent[i] < 0) {
      out << " -\n";
      continue;
    }
    const auto y = t.markers[static_cast<std::size_t>(t.parent[i])];
    for (int k = 0; k < w.n; ++k) out << ' ' << y[k];
    out << '\n';
  }
}

// ---------------------------------------------------------------------- svg

std::string_view palette(int c) {
  static constexpr std::array<std::string_view, 12> colors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                           "#9467bd", "#8c564b", "#e377c2", "#17becf",
                                                           "#bcbd22", "#7f7f7f", "#393b79", "#000000"};
  if (c < 1) return "#cccccc";
  return colors[static_cast<std::size_t>(c - 1) % colors.size()];
}

Svg::Svg(Coord x0, Coord y0, Coord width, Coord height) : x0_(x0), y0_(y0), w_(width), h_(height) {}

void Svg::marker(Coord x, Coord y) {
  std::ostringstream os;
  os << "<circle cx=\"" << sx(static_cast<double>(x) + 0.5) << "\" cy=\"" << sy(static_cast<double>(y) + 0.5)
     << "\" r=\"0.35\" fill=\"#000\"/>\n";
  body_ += os.str();
}

void Svg::rect(const Rect& r, std::string_view stroke) {
  std::ostringstream os;
  const double x = sx(static_cast<double>(r.lo(0))), y = sy(static_cast<double>(r.hi(1)) + 1.0);
  os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << r.side(0) + 1 << "\" height=\"" << r.side(1) + 1
     << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"0.15\"/>\n";
  body_ += os.str();
}

void Svg::polygon(const std::vector<std::array<double, 2>>& corners, std::string_view fill) {
  std::ostringstream os;
  os << "<polygon points=\"";
  for (std::size_t k = 0; k < corners.size(); ++k)
    os << (k ? " " : "") << sx(corners[k][0] + 0.5) << ',' << sy(corners[k][1] + 0.5);
  os << "\" fill=\"" << fill << "\" fill-opacity=\"0.5\" stroke=\"#555\" stroke-width=\"0.1\"/>\n";
  body_ += os.str();
}

void Svg::edge(const Point& a, const Point& b, int color) {
  std::ostringstream os;
  os << "<line x1=\"" << sx(static_cast<double>(a[0]) + 0.5) << "\" y1=\"" << sy(static_cast<double>(a[1]) + 0.5)
     << "\" x2=\"" << sx(static_cast<double>(b[0]) + 0.5) << "\" y2=\"" << sy(static_cast<double>(b[1]) + 0.5)
     << "\" stroke=\"" << palette(color) << "\" stroke-width=\"0.25\"/>\n";
  body_ += os.str();
}

std::string Svg::str() const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w_ << ' ' << h_ << "\" width=\""
     << std::min<Coord>(w_ * 8, 4000) << "\" height=\"" << std::min<Coord>(h_ * 8, 4000) << "\">\n"
     << "<rect width=\"" << w_ << "\" height=\"" << h_ << "\" fill=\"#fff\"/>\n"
     << body_ << "</svg>\n";
  return os.str();
}

// ----------------------------------------------------------------- manifest

std::string_view library_version() { return "0.1.0"; }

std::string manifest_json(const Manifest& m) {
  using nlohmann::json;
  std::ostringstream cfg;
  write_config(cfg, m.config);
  json j;
  j["command"] = m.command;
  j["version"] = library_version();
  j["seed"] = m.config.seed;
  j["config"] = cfg.str();
  j["bounds"] = json::object();
  for (const auto& [k, v] : m.bounds) j["bounds"][k] = v;
  j["seconds"] = json::object();
  for (const auto& [k, v] : m.seconds) j["seconds"][k] = v;
  j["outputs"] = m.outputs;
  j["checks"] = json::array();
  for (const auto& r : m.checks) {
    json c;
    c["check"] = r.check;
    c["pass"] = r.pass;
    c["worst"] = r.worst == kInfinity ? json("inf") : json(r.worst);
    c["bound"] = r.bound == kInfinity ? json("inf") : json(r.bound);
    c["checked"] = r.checked;
    c["violations"] = r.violations;
    c["message"] = r.message;
    j["checks"].push_back(c);
  }
  return j.dump(2) + "\n";
}

}  // namespace strongmark
