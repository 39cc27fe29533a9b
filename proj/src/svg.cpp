#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "report.hpp"

namespace lorcomp {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Bounds {
  double x0 = 0, x1 = 1, t0 = 0, t1 = 1;
  bool empty = true;
  void add(double x, double t) {
    if (empty) {
      x0 = x1 = x;
      t0 = t1 = t;
      empty = false;
      return;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    t0 = std::min(t0, t);
    t1 = std::max(t1, t);
  }
};

// One drawing panel: chart coordinates mapped into a pixel box, time up.
struct Panel {
  Bounds b;
  double px = 0, py = 0, pw = 420, ph = 420;
  double sx(double x) const {
    double w = std::max(b.x1 - b.x0, 1e-9);
    return px + (x - b.x0) / w * pw;
  }
  double sy(double t) const {
    double h = std::max(b.t1 - b.t0, 1e-9);
    return py + ph - (t - b.t0) / h * ph;
  }
};

Point json_point(const json& j) {
  return Point{j.at(0).get<double>(), j.at(1).get<double>()};
}

std::vector<Point> sample_side(const Space& space, const Point& from,
                               const Point& to, int n) {
  std::vector<Point> out;
  out.push_back(from);
  if (space.supports_interpolation()) {
    for (int i = 1; i < n; ++i)
      out.push_back(space.interpolate(from, to, static_cast<double>(i) / n));
  }
  out.push_back(to);
  return out;
}

void polyline_svg(std::ostringstream& os, const Panel& panel,
                  const std::vector<Point>& pts, const char* cls,
                  const char* color) {
  os << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ' ';
    os << fmt(panel.sx(pts[i].x)) << ',' << fmt(panel.sy(pts[i].t));
  }
  os << "\"/>\n";
}

}  // namespace

std::string render_svg(const json& report) {
  if (!report.is_object() || !report.contains("space") || !report.contains("k"))
    fail(Err::InvalidArgument, "report lacks space/k fields");
  SpacePtr space = load_space(report["space"]);
  double k = report["k"].get<double>();
  ModelParams mp = ModelParams::curvature(k);

  // Triangles to draw: those referenced by witnesses, else the samples.
  struct Tri {
    Point x, y, z;
    double a, b, c;
    std::vector<const json*> marks;
  };
  std::vector<Tri> tris;
  auto add_triangle = [&](const json& tj) {
    Tri t;
    t.x = json_point(tj.at("x"));
    t.y = json_point(tj.at("y"));
    t.z = json_point(tj.at("z"));
    t.a = tj.at("sides").at(0).get<double>();
    t.b = tj.at("sides").at(1).get<double>();
    t.c = tj.at("sides").at(2).get<double>();
    tris.push_back(t);
  };
  const json& witnesses =
      report.contains("witnesses") ? report["witnesses"] : json::array();
  for (const json& w : witnesses) {
    if (!w.contains("x")) continue;
    bool present = false;
    for (Tri& t : tris)
      if (same_point(t.x, json_point(w["x"])) &&
          same_point(t.z, json_point(w["z"]))) {
        t.marks.push_back(&w);
        present = true;
        break;
      }
    if (!present && tris.size() < 3) {
      add_triangle(w);
      tris.back().marks.push_back(&w);
    }
  }
  if (tris.empty() && report.contains("sample_triangles")) {
    for (const json& tj : report["sample_triangles"]) {
      if (tris.size() >= 2) break;
      add_triangle(tj);
    }
  }
  if (tris.empty()) fail(Err::InvalidArgument, "report carries no triangles");

  const int kSamples = 32;
  Panel left, right;
  left.px = 40;
  left.py = 40;
  right.px = 520;
  right.py = 40;

  // Precompute geometry so both panels share consistent bounds.
  struct Drawn {
    std::vector<Point> sides[3];
    ModelTriangle comparison;
    std::vector<Point> comp_sides[3];
  };
  std::vector<Drawn> drawn(tris.size());
  for (size_t i = 0; i < tris.size(); ++i) {
    const Tri& t = tris[i];
    drawn[i].sides[0] = sample_side(*space, t.x, t.y, kSamples);
    drawn[i].sides[1] = sample_side(*space, t.y, t.z, kSamples);
    drawn[i].sides[2] = sample_side(*space, t.x, t.z, kSamples);
    for (const auto& side : drawn[i].sides)
      for (const Point& p : side) left.b.add(p.x, p.t);
    drawn[i].comparison = realize_triangle(mp, t.a, t.b, t.c);
    for (Side s : {Side::XY, Side::YZ, Side::XZ}) {
      std::vector<Point> pts;
      double len = side_length(drawn[i].comparison, s);
      for (int j = 0; j <= kSamples; ++j)
        pts.push_back(side_point(drawn[i].comparison, s,
                                 len * static_cast<double>(j) / kSamples));
      for (const Point& p : pts) right.b.add(p.x, p.t);
      drawn[i].comp_sides[static_cast<int>(s)] = std::move(pts);
    }
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        "width=\"980\" height=\"520\" viewBox=\"0 0 980 520\">\n";
  os << "<title>triangle comparison report</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"980\" height=\"520\" fill=\"#ffffff\"/>\n";
  os << "<text x=\"40\" y=\"25\" font-family=\"monospace\" font-size=\"13\">"
     << "instance triangles</text>\n";
  os << "<text x=\"520\" y=\"25\" font-family=\"monospace\" font-size=\"13\">"
     << "comparison triangles (k = " << fmt(k) << ")</text>\n";

  const char* side_colors[3] = {"#1f77b4", "#2ca02c", "#9467bd"};
  for (size_t i = 0; i < tris.size(); ++i) {
    for (int s = 0; s < 3; ++s) {
      polyline_svg(os, left, drawn[i].sides[s], "side-instance", side_colors[s]);
      polyline_svg(os, right, drawn[i].comp_sides[s], "side-comparison",
                   side_colors[s]);
    }
    for (const json* wj : tris[i].marks) {
      const json& w = *wj;
      double defect = w.at("defect").get<double>();
      const char* cls = defect < 0 ? "defect-neg" : "defect-pos";
      const char* color = defect < 0 ? "#d62728" : "#17becf";
      Point qp = json_point(w.at("q_point"));
      os << "<circle class=\"" << cls << "\" cx=\"" << fmt(left.sx(qp.x))
         << "\" cy=\"" << fmt(left.sy(qp.t)) << "\" r=\"4\" fill=\"" << color
         << "\"/>\n";
      // Mirror the marker at the corresponding point of the comparison side.
      SideOffset so{side_from_name(w.at("q_side").get<std::string>()),
                    w.at("q_offset").get<double>()};
      Point qbar = side_point(drawn[i].comparison, so.side,
                              std::min(so.offset,
                                       side_length(drawn[i].comparison, so.side)));
      os << "<circle class=\"" << cls << "\" cx=\"" << fmt(right.sx(qbar.x))
         << "\" cy=\"" << fmt(right.sy(qbar.t)) << "\" r=\"4\" fill=\"" << color
         << "\" fill-opacity=\"0.6\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace lorcomp
