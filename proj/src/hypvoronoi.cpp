#include "hyperperc/hypvoronoi.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>

#include "hyperperc/delaunay2d.hpp"
#include "hyperperc/error.hpp"

namespace hyperperc {

namespace {

using planar::Vec2;

Vec2 to_vec(const geo::HPoint& p) {
  const geo::Complex z = p.disk();
  return {z.real(), z.imag()};
}

// Whether some circle through a and b, with center between the circumcenters
// of the faces on its right and left (the pencil of circles through a, b that
// are empty of all nuclei), lies inside the open unit disk.
bool pencil_meets_disk(const Vec2& a, const Vec2& b, const Vec2& right_center, const Vec2& left_center) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len = std::hypot(dx, dy);
  const Vec2 n{-dy / len, dx / len};
  const Vec2 m{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  const double h = 0.5 * len;
  const double mn = m.x * n.x + m.y * n.y;
  const double mm = m.x * m.x + m.y * m.y;

  auto param = [&](const Vec2& c) { return (c.x - m.x) * n.x + (c.y - m.y) * n.y; };
  // f(t) = |m + t n| + sqrt(h^2 + t^2): farthest reach of the circle, convex in t.
  auto f = [&](double t) { return std::sqrt(std::max(mm + 2.0 * t * mn + t * t, 0.0)) + std::hypot(h, t); };
  auto df = [&](double t) {
    const double r = std::sqrt(std::max(mm + 2.0 * t * mn + t * t, 1e-300));
    return (mn + t) / r + t / std::hypot(h, t);
  };

  double lo = param(right_center);
  double hi = param(left_center);
  if (lo > hi) std::swap(lo, hi);
  double best;
  if (df(lo) >= 0.0) {
    best = lo;
  } else if (df(hi) <= 0.0) {
    best = hi;
  } else {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      (df(mid) < 0.0 ? lo : hi) = mid;
    }
    best = 0.5 * (lo + hi);
  }
  return f(best) < 1.0;
}

}  // namespace

void Window::validate() const {
  if (!(window_radius > 0.0 && window_radius < sample_radius))
    throw Error(ErrorKind::Config, "window radius must satisfy 0 < R_window < R_sample");
}

int VoronoiComplex::origin_cell() const {
  int best = -1;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    if (best < 0 || points.nuclei[i].rho < points.nuclei[best].rho) best = i;
  }
  return best;
}

VoronoiComplex delaunay(ColoredPointSet points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw Error(ErrorKind::DegenerateInput, "need at least 3 nuclei");

  std::vector<Vec2> disk(n);
  for (int i = 0; i < n; ++i) disk[i] = to_vec(points.nuclei[i]);
  const planar::Triangulation tri = planar::triangulate(disk);
  const int nt = static_cast<int>(tri.triangles.size());

  VoronoiComplex out;
  out.interior_radius = points.radius - 1.0;

  // Hyperbolic faces and their circumcenters.
  std::vector<int> face_vertex(nt, -1);
  std::vector<Vec2> euclid_center(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& v = tri.triangles[t].v;
    euclid_center[t] = planar::circumcenter(tri.points[v[0]], tri.points[v[1]], tri.points[v[2]]);
    if (tri.is_super(v[0]) || tri.is_super(v[1]) || tri.is_super(v[2])) continue;
    std::optional<geo::HPoint> c;
    try {
      c = geo::circumcenter(points.nuclei[v[0]], points.nuclei[v[1]], points.nuclei[v[2]]);
    } catch (const Error&) {
      // Numerically collinear: the Euclidean circumcircle is huge.
    }
    if (!c) continue;
    face_vertex[t] = static_cast<int>(out.voronoi_vertices.size());
    out.voronoi_vertices.push_back({*c, {v[0], v[1], v[2]}});
  }

  for (int t = 0; t < nt; ++t) {
    const auto& T = tri.triangles[t];
    for (int i = 0; i < 3; ++i) {
      const int a = T.v[(i + 1) % 3];
      const int b = T.v[(i + 2) % 3];
      const int other = T.adj[i];
      if (tri.is_super(a) || tri.is_super(b) || other < t) continue;
      const bool hyperbolic = face_vertex[t] >= 0 || face_vertex[other] >= 0 ||
                              pencil_meets_disk(disk[a], disk[b], euclid_center[other], euclid_center[t]);
      if (hyperbolic) out.delaunay_edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(out.delaunay_edges.begin(), out.delaunay_edges.end());

  // Cells from the triangle fan around each nucleus.
  std::vector<int> some_triangle(n, -1);
  std::vector<int> slot(n, -1);
  for (int t = 0; t < nt; ++t) {
    for (int k = 0; k < 3; ++k) {
      const int v = tri.triangles[t].v[k];
      if (!tri.is_super(v) && some_triangle[v] < 0) {
        some_triangle[v] = t;
        slot[v] = k;
      }
    }
  }

  out.cells.assign(n, {});
  out.interior_mask.assign(n, 0);
  out.extents.assign(n, {});
  std::vector<int> fan;
  for (int i = 0; i < n; ++i) {
    fan.clear();
    int t = some_triangle[i];
    int k = slot[i];
    do {
      fan.push_back(t);
      const int next = tri.triangles[t].adj[(k + 1) % 3];
      t = next;
      const auto& v = tri.triangles[t].v;
      k = static_cast<int>(std::find(v.begin(), v.end(), i) - v.begin());
    } while (t != some_triangle[i]);

    const bool complete = std::all_of(fan.begin(), fan.end(), [&](int f) { return face_vertex[f] >= 0; });
    CellExtent& ext = out.extents[i];
    ext.min_rho = points.nuclei[i].rho;
    const std::size_t m = fan.size();
    for (std::size_t j = 0; j < m; ++j) {
      const int f0 = face_vertex[fan[j]];
      const int f1 = face_vertex[fan[(j + 1) % m]];
      if (f0 < 0 || f1 < 0) continue;
      ext.min_rho = std::min(ext.min_rho, geo::origin_distance_to_segment(out.voronoi_vertices[f0].position,
                                                                           out.voronoi_vertices[f1].position));
    }
    if (!complete) continue;

    auto& cell = out.cells[i];
    double max_rho = 0.0;
    for (int f : fan) {
      cell.push_back(face_vertex[f]);
      max_rho = std::max(max_rho, out.voronoi_vertices[face_vertex[f]].position.rho);
    }
    ext.complete = true;
    ext.max_rho = max_rho;
    geo::GeodesicPolygon poly;
    for (int vi : cell) poly.vertices.push_back(out.voronoi_vertices[vi].position);
    if (geo::polygon_contains_origin(poly)) ext.min_rho = 0.0;
    out.interior_mask[i] = max_rho <= out.interior_radius ? 1 : 0;
  }

  out.graph = Graph(n, out.delaunay_edges);
  out.points = std::move(points);
  return out;
}

FilteredGraph adjacency_graph(const VoronoiComplex& complex, ColorFilter filter) {
  const int n = static_cast<int>(complex.size());
  FilteredGraph out;
  out.active.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const Color c = complex.points.colors[i];
    out.active[i] = filter == ColorFilter::Any || (filter == ColorFilter::White && c == Color::White) ||
                    (filter == ColorFilter::Black && c == Color::Black);
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : complex.delaunay_edges) {
    if (out.active[a] && out.active[b]) edges.emplace_back(a, b);
  }
  out.graph = Graph(n, std::move(edges));
  return out;
}

geo::GeodesicPolygon cell_polygon(const VoronoiComplex& complex, int i) {
  if (i < 0 || i >= static_cast<int>(complex.size()) || !complex.interior_mask[i])
    throw Error(ErrorKind::NotInterior, "cell " + std::to_string(i) + " is not interior");
  geo::GeodesicPolygon poly;
  for (int v : complex.cells[i]) poly.vertices.push_back(complex.voronoi_vertices[v].position);
  return poly;
}

void write_complex(std::ostream& out, const VoronoiComplex& complex) {
  out << "#hvc v1 n=" << complex.size() << " edges=" << complex.delaunay_edges.size()
      << " vertices=" << complex.voronoi_vertices.size() << '\n';
  out << "NUCLEI\n";
  for (std::size_t i = 0; i < complex.size(); ++i) {
    const auto& p = complex.points.nuclei[i];
    out << format_double(p.rho) << ' ' << format_double(p.theta) << ' '
        << (complex.points.colors[i] == Color::White ? 'W' : 'B') << ' ' << int(complex.interior_mask[i]) << '\n';
  }
  out << "EDGES\n";
  for (const auto& [a, b] : complex.delaunay_edges) out << a << ' ' << b << '\n';
  out << "VERTICES\n";
  for (const auto& v : complex.voronoi_vertices) {
    out << format_double(v.position.rho) << ' ' << format_double(v.position.theta) << ' ' << v.nuclei[0] << ' '
        << v.nuclei[1] << ' ' << v.nuclei[2] << '\n';
  }
}

}  // namespace hyperperc
