#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hyperperc/graph.hpp"
#include "hyperperc/hypgeo.hpp"

namespace hyperperc {

/// Finite ball of the regular {p,q} tiling: p-gonal faces, q per vertex.
/// Layer 0 is one face; every further layer completes all vertices of the
/// previous boundary to degree q.
struct TilingBall {
  int p_gon = 0;
  int q_deg = 0;
  int layers = 0;

  Graph graph;
  /// Per vertex, incident edge ids in counterclockwise order. For boundary
  /// vertices the list starts right after the outer face.
  std::vector<std::vector<int>> rotation;
  /// Counterclockwise vertex cycle of every face; all faces are bounded.
  std::vector<std::vector<int>> faces;
  /// face_edges[f][i] joins faces[f][i] and faces[f][i+1].
  std::vector<std::vector<int>> face_edges;
  /// Faces on either side of each edge, -1 for the outer face.
  std::vector<std::array<int, 2>> edge_faces;
  /// Vertices off the outer boundary (all q faces present).
  std::vector<std::uint8_t> interior_vertex_mask;
  std::vector<int> vertex_layer;
  std::vector<int> face_layer;
  /// Outer boundary, counterclockwise.
  std::vector<int> boundary;

  int num_vertices() const { return graph.num_vertices(); }
  int num_edges() const { return graph.num_edges(); }
  int num_faces() const { return static_cast<int>(faces.size()); }
  bool edge_is_interior(int e) const { return edge_faces[e][0] >= 0 && edge_faces[e][1] >= 0; }
};

inline constexpr std::int64_t kDefaultMaxVertices = 10'000'000;

/// Throws Error{NotHyperbolic} if (p-2)(q-2) <= 4, Error{Config} if L < 1,
/// Error{TooLarge} if the vertex bound would be exceeded.
TilingBall build_ball(int p_gon, int q_deg, int layers, std::int64_t max_vertices = kDefaultMaxVertices);

/// Dual over the faces of a ball: one vertex per face, one edge e* per primal
/// edge between two faces.
struct DualBall {
  Graph graph;
  std::vector<int> primal_edge;  // per dual edge
  std::vector<int> dual_edge;    // per primal edge, -1 for boundary edges
  /// Per dual vertex, dual edge ids counterclockwise (the face's edge order).
  std::vector<std::vector<int>> rotation;
  /// Faces whose every edge is shared with another face.
  std::vector<std::uint8_t> interior_vertex_mask;
  /// One dual face per interior primal vertex: the faces around it, ccw.
  std::vector<std::vector<int>> faces;
};

DualBall dual_ball(const TilingBall& ball);

/// BFS distances from `source`; -1 where unreachable.
std::vector<int> bfs_distances(const Graph& graph, int source);

/// Throws Error{Disconnected} if v is unreachable from u.
int graph_distance(const TilingBall& ball, int u, int v);

/// Disk positions of the vertices for rendering: the first face is the
/// regular p-gon centered at the origin, the rest follow by reflection.
std::vector<geo::HPoint> embed(const TilingBall& ball);

/// `#pq v1 p=<int> q=<int> L=<int>` with VERTICES/EDGES/FACES/DUAL sections.
void write_tiling(std::ostream& out, const TilingBall& ball, const DualBall& dual);

}  // namespace hyperperc
