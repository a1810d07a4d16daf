#pragma once

// Bernoulli bond/site configurations, cluster labeling and the finite-volume
// phase signature used as a proxy for the number of infinite clusters.

#include <cstdint>
#include <span>
#include <vector>

#include "hyperperc/graph.hpp"
#include "hyperperc/hypvoronoi.hpp"
#include "hyperperc/tiling.hpp"

namespace hyperperc {

struct BondConfig {
  const Graph* host = nullptr;
  std::vector<std::uint8_t> open;  // per edge
  double p = 0.0;
  std::uint64_t seed = 0;

  int open_count() const;
};

struct SiteConfig {
  const Graph* host = nullptr;
  std::vector<std::uint8_t> open;  // per vertex
  double p = 0.0;
  std::uint64_t seed = 0;
};

/// Edge e is open iff U_e < p, with U_e drawn from counter e of the seed's
/// stream, so configurations are monotonically coupled in p.
BondConfig bernoulli_bond(const Graph& graph, double p, std::uint64_t seed);
SiteConfig bernoulli_site(const Graph& graph, double p, std::uint64_t seed);

/// Edges with both endpoints open.
BondConfig site_to_bond(const SiteConfig& sites);

/// e* open iff e closed, for every edge shared by two faces.
BondConfig dual_config(const BondConfig& primal, const DualBall& dual);
/// Back from the dual: e open iff e* closed, on edges whose endpoints are both
/// interior (the edges that are duals of dual edges). Other edges stay closed.
BondConfig dual_config(const BondConfig& on_dual, const TilingBall& ball, const DualBall& dual);

struct ClusterLabeling {
  /// Cluster id per vertex, -1 for inactive sites. Ids are 0..n-1 in order of
  /// the smallest vertex of each cluster.
  std::vector<int> label;
  std::vector<int> sizes;
  /// Labels containing a shell vertex, ascending.
  std::vector<int> boundary_reaching;
  /// Boundary-reaching labels that also contain a core vertex.
  int k_proxy = 0;

  int num_clusters() const { return static_cast<int>(sizes.size()); }
};

/// Components of the open subgraph; with `site_active` given, only active
/// sites (and edges between them) take part.
ClusterLabeling label_clusters(const Graph& graph, std::span<const std::uint8_t> edge_open,
                               std::span<const std::uint8_t> site_active = {});

/// Fills boundary_reaching and k_proxy.
void mark_boundary(ClusterLabeling& labeling, std::span<const std::uint8_t> core, std::span<const std::uint8_t> shell);

/// Vertices taking part at one window size, and the core/shell marks.
struct Region {
  std::vector<std::uint8_t> member;
  std::vector<std::uint8_t> core;
  std::vector<std::uint8_t> shell;
};

/// Tiling ball seen from a center vertex: graph distances, the largest
/// radius at which the graph ball is complete, and face depth ranges.
struct TilingFrame {
  const TilingBall* ball = nullptr;
  DualBall dual;
  int center = 0;
  std::vector<int> depth;
  /// Every vertex at depth < complete_radius has all q neighbors present.
  int complete_radius = 0;
  std::vector<int> face_min_depth;
  std::vector<int> face_max_depth;

  /// Vertices at depth <= R; core depth <= core_radius; shell depth == R.
  Region primal_region(int radius, int core_radius) const;
  /// Faces with every vertex at depth <= R; core faces touch a core vertex;
  /// shell faces touch depth R.
  Region dual_region(int radius, int core_radius) const;
};

TilingFrame make_frame(const TilingBall& ball, int center = 0);

/// Cells meeting the ball of radius R; core cells meet the ball of radius
/// core_radius; shell cells reach beyond R (or are cut by the sample edge).
Region voronoi_region(const VoronoiComplex& complex, double radius, double core_radius);

/// k for the primary cluster family (primal / white) and for the secondary
/// one (dual / black).
struct PhaseSignature {
  int primary = 0;
  int secondary = 0;

  friend bool operator==(const PhaseSignature&, const PhaseSignature&) = default;
};

inline constexpr int kDefaultGraphCore = 2;
inline constexpr double kDefaultVoronoiCore = 1.0;

/// (k, k*) for a primal bond configuration on the frame's ball.
PhaseSignature phase_signature(const BondConfig& primal, const TilingFrame& frame, int radius,
                               int core_radius = kDefaultGraphCore);

/// (k_white, k_black) for the complex's own coloring, inside the window.
PhaseSignature phase_signature(const VoronoiComplex& complex, const Window& window,
                               double core_radius = kDefaultVoronoiCore);

/// Shell vertices in clusters that meet the core: the observable whose
/// successive-window curves cross near p_c.
long shell_hits(const ClusterLabeling& labeling, std::span<const std::uint8_t> core,
                std::span<const std::uint8_t> shell);

}  // namespace hyperperc
