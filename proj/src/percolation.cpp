#include "hyperperc/percolation.hpp"

#include <algorithm>
#include <limits>

#include "hyperperc/error.hpp"
#include "hyperperc/rng.hpp"

namespace hyperperc {

int BondConfig::open_count() const { return static_cast<int>(std::count(open.begin(), open.end(), 1)); }

BondConfig bernoulli_bond(const Graph& graph, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::Config, "p must lie in [0, 1]");
  BondConfig c{&graph, std::vector<std::uint8_t>(graph.num_edges()), p, seed};
  const rng::Stream stream(seed);
  for (int e = 0; e < graph.num_edges(); ++e) c.open[e] = stream.uniform_at(e) < p;
  return c;
}

SiteConfig bernoulli_site(const Graph& graph, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::Config, "p must lie in [0, 1]");
  SiteConfig c{&graph, std::vector<std::uint8_t>(graph.num_vertices()), p, seed};
  const rng::Stream stream(seed);
  for (int v = 0; v < graph.num_vertices(); ++v) c.open[v] = stream.uniform_at(v) < p;
  return c;
}

BondConfig site_to_bond(const SiteConfig& sites) {
  const Graph& g = *sites.host;
  BondConfig c{&g, std::vector<std::uint8_t>(g.num_edges()), sites.p, sites.seed};
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    c.open[e] = sites.open[u] && sites.open[v];
  }
  return c;
}

BondConfig dual_config(const BondConfig& primal, const DualBall& dual) {
  BondConfig c{&dual.graph, std::vector<std::uint8_t>(dual.graph.num_edges()), 1.0 - primal.p, primal.seed};
  for (int d = 0; d < dual.graph.num_edges(); ++d) c.open[d] = !primal.open[dual.primal_edge[d]];
  return c;
}

BondConfig dual_config(const BondConfig& on_dual, const TilingBall& ball, const DualBall& dual) {
  BondConfig c{&ball.graph, std::vector<std::uint8_t>(ball.num_edges(), 0), 1.0 - on_dual.p, on_dual.seed};
  for (int e = 0; e < ball.num_edges(); ++e) {
    const auto [u, v] = ball.graph.edge(e);
    if (!ball.interior_vertex_mask[u] || !ball.interior_vertex_mask[v]) continue;
    c.open[e] = !on_dual.open[dual.dual_edge[e]];
  }
  return c;
}

ClusterLabeling label_clusters(const Graph& graph, std::span<const std::uint8_t> edge_open,
                               std::span<const std::uint8_t> site_active) {
  const int n = graph.num_vertices();
  auto active = [&](int v) { return site_active.empty() || site_active[v]; };
  UnionFind uf(n);
  for (int e = 0; e < graph.num_edges(); ++e) {
    if (!edge_open[e]) continue;
    const auto [u, v] = graph.edge(e);
    if (active(u) && active(v)) uf.unite(u, v);
  }
  ClusterLabeling out;
  out.label.assign(n, -1);
  std::vector<int> root_label(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!active(v)) continue;
    const int r = uf.find(v);
    if (root_label[r] < 0) {
      root_label[r] = static_cast<int>(out.sizes.size());
      out.sizes.push_back(0);
    }
    out.label[v] = root_label[r];
    ++out.sizes[root_label[r]];
  }
  return out;
}

void mark_boundary(ClusterLabeling& labeling, std::span<const std::uint8_t> core, std::span<const std::uint8_t> shell) {
  const int nc = labeling.num_clusters();
  std::vector<std::uint8_t> in_core(nc, 0), in_shell(nc, 0);
  for (std::size_t v = 0; v < labeling.label.size(); ++v) {
    const int l = labeling.label[v];
    if (l < 0) continue;
    if (core[v]) in_core[l] = 1;
    if (shell[v]) in_shell[l] = 1;
  }
  labeling.boundary_reaching.clear();
  labeling.k_proxy = 0;
  for (int l = 0; l < nc; ++l) {
    if (!in_shell[l]) continue;
    labeling.boundary_reaching.push_back(l);
    if (in_core[l]) ++labeling.k_proxy;
  }
}

long shell_hits(const ClusterLabeling& labeling, std::span<const std::uint8_t> core,
                std::span<const std::uint8_t> shell) {
  const int nc = labeling.num_clusters();
  std::vector<std::uint8_t> in_core(nc, 0);
  std::vector<long> count(nc, 0);
  for (std::size_t v = 0; v < labeling.label.size(); ++v) {
    const int l = labeling.label[v];
    if (l < 0) continue;
    if (core[v]) in_core[l] = 1;
    if (shell[v]) ++count[l];
  }
  long total = 0;
  for (int l = 0; l < nc; ++l)
    if (in_core[l]) total += count[l];
  return total;
}

TilingFrame make_frame(const TilingBall& ball, int center) {
  if (center < 0 || center >= ball.num_vertices()) throw Error(ErrorKind::Config, "frame center out of range");
  TilingFrame f;
  f.ball = &ball;
  f.dual = dual_ball(ball);
  f.center = center;
  f.depth = bfs_distances(ball.graph, center);
  int complete = std::numeric_limits<int>::max();
  for (int v = 0; v < ball.num_vertices(); ++v) {
    if (!ball.interior_vertex_mask[v]) complete = std::min(complete, f.depth[v]);
  }
  // Depth of the nearest boundary vertex: everything strictly closer is complete.
  f.complete_radius = complete;
  f.face_min_depth.assign(ball.num_faces(), std::numeric_limits<int>::max());
  f.face_max_depth.assign(ball.num_faces(), 0);
  for (int fc = 0; fc < ball.num_faces(); ++fc) {
    for (int v : ball.faces[fc]) {
      f.face_min_depth[fc] = std::min(f.face_min_depth[fc], f.depth[v]);
      f.face_max_depth[fc] = std::max(f.face_max_depth[fc], f.depth[v]);
    }
  }
  return f;
}

Region TilingFrame::primal_region(int radius, int core_radius) const {
  if (radius > complete_radius)
    throw Error(ErrorKind::Config, "radius exceeds the complete part of the tiling ball");
  const int n = ball->num_vertices();
  Region r{std::vector<std::uint8_t>(n), std::vector<std::uint8_t>(n), std::vector<std::uint8_t>(n)};
  for (int v = 0; v < n; ++v) {
    r.member[v] = depth[v] <= radius;
    r.core[v] = depth[v] <= core_radius;
    r.shell[v] = depth[v] == radius;
  }
  return r;
}

Region TilingFrame::dual_region(int radius, int core_radius) const {
  if (radius > complete_radius)
    throw Error(ErrorKind::Config, "radius exceeds the complete part of the tiling ball");
  const int n = ball->num_faces();
  Region r{std::vector<std::uint8_t>(n), std::vector<std::uint8_t>(n), std::vector<std::uint8_t>(n)};
  for (int f = 0; f < n; ++f) {
    r.member[f] = face_max_depth[f] <= radius;
    r.core[f] = face_min_depth[f] <= core_radius;
    r.shell[f] = face_max_depth[f] == radius;
  }
  return r;
}

Region voronoi_region(const VoronoiComplex& complex, double radius, double core_radius) {
  const int n = static_cast<int>(complex.size());
  Region r{std::vector<std::uint8_t>(n), std::vector<std::uint8_t>(n), std::vector<std::uint8_t>(n)};
  for (int i = 0; i < n; ++i) {
    const CellExtent& e = complex.extents[i];
    r.member[i] = e.min_rho <= radius;
    r.core[i] = e.min_rho <= core_radius;
    r.shell[i] = r.member[i] && e.max_rho > radius;
  }
  return r;
}

namespace {

std::vector<std::uint8_t> restrict_edges(const Graph& g, std::span<const std::uint8_t> open,
                                         std::span<const std::uint8_t> member) {
  std::vector<std::uint8_t> out(g.num_edges(), 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    out[e] = open[e] && member[u] && member[v];
  }
  return out;
}

}  // namespace

PhaseSignature phase_signature(const BondConfig& primal, const TilingFrame& frame, int radius, int core_radius) {
  PhaseSignature sig;
  const Region pr = frame.primal_region(radius, core_radius);
  ClusterLabeling lp = label_clusters(frame.ball->graph, restrict_edges(frame.ball->graph, primal.open, pr.member),
                                      pr.member);
  mark_boundary(lp, pr.core, pr.shell);
  sig.primary = lp.k_proxy;

  const BondConfig dual = dual_config(primal, frame.dual);
  const Region dr = frame.dual_region(radius, core_radius);
  ClusterLabeling ld = label_clusters(frame.dual.graph, restrict_edges(frame.dual.graph, dual.open, dr.member),
                                      dr.member);
  mark_boundary(ld, dr.core, dr.shell);
  sig.secondary = ld.k_proxy;
  return sig;
}

PhaseSignature phase_signature(const VoronoiComplex& complex, const Window& window, double core_radius) {
  window.validate();
  const Region region = voronoi_region(complex, window.window_radius, core_radius);
  const std::vector<std::uint8_t> all_open(complex.graph.num_edges(), 1);
  PhaseSignature sig;
  for (Color color : {Color::White, Color::Black}) {
    std::vector<std::uint8_t> active(complex.size());
    for (std::size_t i = 0; i < complex.size(); ++i)
      active[i] = region.member[i] && complex.points.colors[i] == color;
    ClusterLabeling l = label_clusters(complex.graph, all_open, active);
    mark_boundary(l, region.core, region.shell);
    (color == Color::White ? sig.primary : sig.secondary) = l.k_proxy;
  }
  return sig;
}

}  // namespace hyperperc
