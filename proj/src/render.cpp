#include "hyperperc/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "hyperperc/pointprocess.hpp"

namespace hyperperc {

namespace {

using geo::Complex;

const char* const kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
                                "#42d4f4", "#f032e6", "#bfef45", "#9a6324", "#800000"};
constexpr int kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  // Avoid "-0.000", which would make identical pictures differ textually.
  if (std::string(buf) == "-0.000") return "0.000";
  return buf;
}

double scale(const SvgStyle& s) { return 0.5 * s.size - s.margin; }

std::string px(Complex z, const SvgStyle& s) {
  const double c = 0.5 * s.size;
  return num(c + scale(s) * z.real()) + " " + num(c - scale(s) * z.imag());
}

std::string header(const SvgStyle& s) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(s.size) << "\" height=\""
      << num(s.size) << "\" viewBox=\"0 0 " << num(s.size) << ' ' << num(s.size) << "\">\n";
  return out.str();
}

std::string disk_circle(const SvgStyle& s, const char* fill) {
  return "<circle cx=\"" + num(0.5 * s.size) + "\" cy=\"" + num(0.5 * s.size) + "\" r=\"" + num(scale(s)) +
         "\" fill=\"" + fill + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
}

// Ideal endpoints of the perpendicular bisector of a and b.
std::pair<Complex, Complex> bisector_ends(const geo::HPoint& a, const geo::HPoint& b) {
  const geo::Isometry to_origin = geo::Isometry::translation(a).inverse();
  const Complex bp = to_origin.apply_disk(b.disk());
  const double t = std::abs(bp);
  const Complex u = bp / t;
  const double tm = t / (1.0 + std::sqrt(1.0 - t * t));  // disk radius of the midpoint
  const double c = (1.0 + tm * tm) / (2.0 * tm);
  const double phi = std::acos(std::clamp(1.0 / c, -1.0, 1.0));
  const geo::Isometry back = to_origin.inverse();
  return {back.apply_disk(u * std::polar(1.0, phi)), back.apply_disk(u * std::polar(1.0, -phi))};
}

// Point at hyperbolic distance s from v toward the ideal point e.
geo::HPoint step_toward(const geo::HPoint& v, Complex e, double s) {
  const geo::Isometry g = geo::Isometry::translation(v);
  const Complex dir = g.inverse().apply_disk(e);
  return geo::HPoint::from_disk(g.apply_disk(std::tanh(0.5 * s) * dir / std::abs(dir)));
}

}  // namespace

std::string geodesic_path_to(Complex z1, Complex z2, const SvgStyle& style) {
  // Circle through z1 and z2 orthogonal to the unit circle: 2 <c, z> = 1 + |z|^2.
  const double det = 2.0 * (z1.real() * z2.imag() - z2.real() * z1.imag());
  const double r1 = 1.0 + std::norm(z1), r2 = 1.0 + std::norm(z2);
  if (std::abs(det) < 1e-9) return "L " + px(z2, style);
  const Complex c((r1 * z2.imag() - r2 * z1.imag()) / det, (z1.real() * r2 - z2.real() * r1) / det);
  const double radius = std::abs(c - z1);
  if (radius > 1e4) return "L " + px(z2, style);
  // Orientation in screen coordinates (y flipped): sweep-flag 1 runs in the
  // direction of increasing screen angle.
  const Complex a = z1 - c, b = z2 - c;
  const double cross_screen = -(a.real() * b.imag() - a.imag() * b.real());
  const int sweep = cross_screen > 0.0 ? 1 : 0;
  return "A " + num(radius * scale(style)) + " " + num(radius * scale(style)) + " 0 0 " + std::to_string(sweep) +
         " " + px(z2, style);
}

std::string render_voronoi_svg(const VoronoiComplex& cx, const SvgStyle& style) {
  std::ostringstream out;
  out << header(style) << disk_circle(style, "#d9d9d9");
  const int n = static_cast<int>(cx.size());
  if (n == 0) {
    out << "</svg>\n";
    return out.str();
  }
  const double draw_radius = style.window_radius;
  auto visible = [&](int i) { return cx.extents[i].min_rho <= draw_radius; };

  // Outline color per cell of a boundary-reaching cluster, white clusters first.
  std::vector<int> outline(n, -1);
  if (style.cluster_strokes && std::isfinite(style.window_radius)) {
    const Region region = voronoi_region(cx, style.window_radius, style.core_radius);
    const std::vector<std::uint8_t> all_open(cx.graph.num_edges(), 1);
    int next_color = 0;
    for (Color color : {Color::White, Color::Black}) {
      std::vector<std::uint8_t> active(n);
      for (int i = 0; i < n; ++i) active[i] = region.member[i] && cx.points.colors[i] == color;
      ClusterLabeling l = label_clusters(cx.graph, all_open, active);
      mark_boundary(l, region.core, region.shell);
      std::map<int, int> color_of;
      for (int lab : l.boundary_reaching) color_of[lab] = next_color++ % kPaletteSize;
      for (int i = 0; i < n; ++i) {
        const auto it = l.label[i] >= 0 ? color_of.find(l.label[i]) : color_of.end();
        if (it != color_of.end()) outline[i] = it->second;
      }
    }
  }

  out << "<g id=\"cells\">\n";
  for (int i = 0; i < n; ++i) {
    const auto& cell = cx.cells[i];
    if (cell.empty() || !visible(i)) continue;
    std::string d = "M " + px(cx.voronoi_vertices[cell[0]].position.disk(), style);
    for (std::size_t k = 0; k < cell.size(); ++k) {
      const Complex a = cx.voronoi_vertices[cell[k]].position.disk();
      const Complex b = cx.voronoi_vertices[cell[(k + 1) % cell.size()]].position.disk();
      d += " " + geodesic_path_to(a, b, style);
    }
    d += " Z";
    const bool white = cx.points.colors[i] == Color::White;
    out << "<path d=\"" << d << "\" fill=\"" << (white ? "#f7f7f7" : "#1f1f1f") << "\"";
    if (outline[i] >= 0) {
      out << " stroke=\"" << kPalette[outline[i]] << "\" stroke-width=\"1.5\"";
    } else {
      out << " stroke=\"none\"";
    }
    out << "/>\n";
  }
  out << "</g>\n";

  // Voronoi edges: one per Delaunay edge, between the (at most two) Voronoi
  // vertices it separates, running to the ideal boundary where one is missing.
  std::map<std::pair<int, int>, std::vector<int>> around;
  for (int v = 0; v < static_cast<int>(cx.voronoi_vertices.size()); ++v) {
    const auto& t = cx.voronoi_vertices[v].nuclei;
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      around[{std::min(a, b), std::max(a, b)}].push_back(v);
    }
  }
  out << "<g id=\"edges\" fill=\"none\" stroke=\"#7f7f7f\" stroke-width=\"0.6\">\n";
  for (const auto& [a, b] : cx.delaunay_edges) {
    if (!visible(a) && !visible(b)) continue;
    const auto it = around.find({a, b});
    const std::vector<int> none;
    const std::vector<int>& vs = it == around.end() ? none : it->second;
    const geo::HPoint& na = cx.points.nuclei[a];
    const geo::HPoint& nb = cx.points.nuclei[b];
    Complex from, to;
    if (vs.size() >= 2) {
      from = cx.voronoi_vertices[vs[0]].position.disk();
      to = cx.voronoi_vertices[vs[1]].position.disk();
    } else if (vs.size() == 1) {
      const VoronoiVertex& vv = cx.voronoi_vertices[vs[0]];
      int third = -1;
      for (int m : vv.nuclei)
        if (m != a && m != b) third = m;
      const auto [e1, e2] = bisector_ends(na, nb);
      const geo::HPoint probe = step_toward(vv.position, e1, 0.5);
      const bool toward_e1 =
          third < 0 || geo::dist(probe, na) < geo::dist(probe, cx.points.nuclei[third]);
      from = vv.position.disk();
      to = toward_e1 ? e1 : e2;
    } else {
      std::tie(from, to) = bisector_ends(na, nb);
    }
    out << "<path d=\"M " << px(from, style) << ' ' << geodesic_path_to(from, to, style) << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string render_tiling_svg(const TilingBall& ball, const std::vector<geo::HPoint>& positions,
                              const std::vector<std::uint8_t>& open, const SvgStyle& style) {
  std::ostringstream out;
  out << header(style) << disk_circle(style, "#ffffff");
  out << "<g id=\"faces\" fill=\"#eef3fb\" stroke=\"none\">\n";
  for (const auto& face : ball.faces) {
    std::string d = "M " + px(positions[face[0]].disk(), style);
    for (std::size_t k = 0; k < face.size(); ++k)
      d += " " + geodesic_path_to(positions[face[k]].disk(), positions[face[(k + 1) % face.size()]].disk(), style);
    out << "<path d=\"" << d << " Z\"/>\n";
  }
  out << "</g>\n<g id=\"edges\" fill=\"none\">\n";
  for (int e = 0; e < ball.num_edges(); ++e) {
    const auto [u, v] = ball.graph.edge(e);
    const Complex a = positions[u].disk(), b = positions[v].disk();
    const bool is_open = !open.empty() && open[e];
    const char* stroke = open.empty() ? "#3b5b92" : (is_open ? "#b2182b" : "#c8c8c8");
    const char* width = is_open ? "1.5" : "0.6";
    out << "<path d=\"M " << px(a, style) << ' ' << geodesic_path_to(a, b, style) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"" << width << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string render_phase_svg(const PhaseTable& table, const SvgStyle& style) {
  std::ostringstream out;
  out << header(style);
  std::set<double> ps, ls;
  for (const PhaseRow& r : table.rows) {
    ps.insert(r.p);
    ls.insert(r.lambda);
  }
  const double left = 70.0, bottom = 60.0, top = 20.0, legend = 170.0;
  const double w = style.size - left - legend, h = style.size - top - bottom;
  out << "<rect x=\"0\" y=\"0\" width=\"" << num(style.size) << "\" height=\"" << num(style.size)
      << "\" fill=\"#ffffff\"/>\n";
  auto color = [](Phase p) {
    switch (p) {
      case Phase::WUnique:
        return "#fde725";
      case Phase::BUnique:
        return "#440154";
      case Phase::BothMany:
        return "#21918c";
      default:
        return "#bdbdbd";
    }
  };
  if (!ps.empty()) {
    const std::vector<double> pv(ps.begin(), ps.end()), lv(ls.begin(), ls.end());
    const double cw = w / static_cast<double>(pv.size()), ch = h / static_cast<double>(lv.size());
    for (const PhaseRow& r : table.rows) {
      const auto i = std::lower_bound(pv.begin(), pv.end(), r.p) - pv.begin();
      const auto j = std::lower_bound(lv.begin(), lv.end(), r.lambda) - lv.begin();
      const double x = left + static_cast<double>(i) * cw;
      const double y = top + h - static_cast<double>(j + 1) * ch;
      out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(cw) << "\" height=\"" << num(ch)
          << "\" fill=\"" << color(r.phase) << "\"><title>p=" << format_double(r.p)
          << " lambda=" << format_double(r.lambda) << ' ' << to_string(r.phase) << "</title></rect>\n";
    }
    out << "<text x=\"" << num(left) << "\" y=\"" << num(style.size - 30) << "\" font-size=\"12\">p "
        << format_double(pv.front()) << " .. " << format_double(pv.back()) << "</text>\n";
    out << "<text x=\"5\" y=\"" << num(top + 12) << "\" font-size=\"12\">lambda " << format_double(lv.front())
        << " .. " << format_double(lv.back()) << "</text>\n";
  }
  out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  double ly = top + 10.0;
  for (Phase p : {Phase::WUnique, Phase::BUnique, Phase::BothMany, Phase::SubcriticalAmbiguous}) {
    out << "<rect x=\"" << num(left + w + 15) << "\" y=\"" << num(ly) << "\" width=\"14\" height=\"14\" fill=\""
        << color(p) << "\"/><text x=\"" << num(left + w + 35) << "\" y=\"" << num(ly + 12)
        << "\" font-size=\"12\">" << to_string(p) << "</text>\n";
    ly += 22.0;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace hyperperc
