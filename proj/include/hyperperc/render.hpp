#pragma once

// SVG 1.1 pictures in the Poincare disk. Geodesic segments become circular
// arcs orthogonal to the boundary circle (straight lines through the center).

#include <limits>
#include <string>
#include <vector>

#include "hyperperc/hypvoronoi.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/phase.hpp"
#include "hyperperc/tiling.hpp"

namespace hyperperc {

struct SvgStyle {
  double size = 800.0;  // width and height in px
  double margin = 10.0;
  /// Cells and edges beyond this radius are skipped; clusters reaching past
  /// it get their own outline color. Infinity draws everything.
  double window_radius = std::numeric_limits<double>::infinity();
  double core_radius = kDefaultVoronoiCore;
  bool cluster_strokes = true;
};

std::string render_voronoi_svg(const VoronoiComplex& complex, const SvgStyle& style = {});

/// `open` (one flag per edge) may be empty, in which case all edges are drawn
/// alike.
std::string render_tiling_svg(const TilingBall& ball, const std::vector<geo::HPoint>& positions,
                              const std::vector<std::uint8_t>& open = {}, const SvgStyle& style = {});

std::string render_phase_svg(const PhaseTable& table, const SvgStyle& style = {});

/// SVG path fragment (without the leading M) continuing from z1 to z2 along
/// the geodesic; exposed for tests. Points are disk coordinates, |z| <= 1.
std::string geodesic_path_to(geo::Complex z1, geo::Complex z2, const SvgStyle& style);

}  // namespace hyperperc
