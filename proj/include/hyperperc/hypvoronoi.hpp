#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

#include "hyperperc/graph.hpp"
#include "hyperperc/hypgeo.hpp"
#include "hyperperc/pointprocess.hpp"

namespace hyperperc {

/// Statistics are taken inside R_window; cells are sampled out to R_sample.
struct Window {
  double sample_radius = 7.0;
  double window_radius = 5.0;

  static constexpr double kDefaultMargin = 2.0;

  double margin() const { return sample_radius - window_radius; }
  static Window from_window(double window_radius, double margin = kDefaultMargin) {
    return {window_radius + margin, window_radius};
  }
  /// Throws Error{Config} unless 0 < R_window < R_sample.
  void validate() const;
};

struct VoronoiVertex {
  geo::HPoint position;
  std::array<int, 3> nuclei;
};

/// Radial extent of a cell. Incomplete cells (some incident Delaunay face is
/// not hyperbolic) have max_rho = +inf and a min_rho bounded by the nucleus.
struct CellExtent {
  double min_rho = 0.0;
  double max_rho = std::numeric_limits<double>::infinity();
  bool complete = false;
};

struct VoronoiComplex {
  ColoredPointSet points;
  /// Pairs (i < j) of nuclei whose cells share a boundary arc, sorted.
  std::vector<std::pair<int, int>> delaunay_edges;
  /// Hyperbolic circumcenters of the Delaunay faces, each with its nuclei.
  std::vector<VoronoiVertex> voronoi_vertices;
  /// Per nucleus, its Voronoi vertices counterclockwise; empty when the cell
  /// is unbounded or cut by the sample boundary.
  std::vector<std::vector<int>> cells;
  std::vector<std::uint8_t> interior_mask;
  std::vector<CellExtent> extents;
  /// Voronoi vertices beyond this radius mark their cells as boundary cells.
  double interior_radius = 0.0;
  Graph graph;

  std::size_t size() const { return points.size(); }
  /// Index of the nucleus whose cell contains the origin.
  int origin_cell() const;
};

/// Hyperbolic Delaunay/Voronoi complex of the nuclei: Euclidean Delaunay of
/// the disk images, keeping faces whose circumdisk lies inside the unit disk.
/// Throws Error{DegenerateInput} on duplicates or fewer than 3 nuclei.
VoronoiComplex delaunay(ColoredPointSet points);

enum class ColorFilter { White, Black, Any };

struct FilteredGraph {
  Graph graph;                        // over all nucleus indices
  std::vector<std::uint8_t> active;   // nuclei passing the filter
};

FilteredGraph adjacency_graph(const VoronoiComplex& complex, ColorFilter filter);

/// Throws Error{NotInterior} when interior_mask[i] is false.
geo::GeodesicPolygon cell_polygon(const VoronoiComplex& complex, int i);

/// Text form: `#hvc v1 n=<int> edges=<int> vertices=<int>`, then sections
/// NUCLEI (rho theta W|B interior), EDGES (i j), VERTICES (rho theta a b c).
void write_complex(std::ostream& out, const VoronoiComplex& complex);

}  // namespace hyperperc
