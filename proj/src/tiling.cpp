#include "hyperperc/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <string>
#include <unordered_map>

#include "hyperperc/error.hpp"

namespace hyperperc {

namespace {

class BallBuilder {
 public:
  BallBuilder(int p, int q) : p_(p), q_(q) {}

  int add_vertex(int layer) {
    incident_.emplace_back();
    vertex_layer_.push_back(layer);
    return static_cast<int>(incident_.size()) - 1;
  }

  int edge(int u, int v) {
    const std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | static_cast<std::uint32_t>(std::max(u, v));
    auto [it, inserted] = edge_index_.try_emplace(key, static_cast<int>(edges_.size()));
    if (inserted) {
      edges_.emplace_back(u, v);
      incident_[u].push_back(it->second);
      incident_[v].push_back(it->second);
      edge_faces_.push_back({-1, -1});
    }
    return it->second;
  }

  void add_face(std::vector<int> cycle, int layer) {
    const int f = static_cast<int>(faces_.size());
    std::vector<int> fe(cycle.size());
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int e = edge(cycle[i], cycle[(i + 1) % cycle.size()]);
      fe[i] = e;
      auto& slots = edge_faces_[e];
      (slots[0] < 0 ? slots[0] : slots[1]) = f;
    }
    faces_.push_back(std::move(cycle));
    face_edges_.push_back(std::move(fe));
    face_layer_.push_back(layer);
  }

  int degree(int v) const { return static_cast<int>(incident_[v].size()); }

  void seed() {
    std::vector<int> cycle(p_);
    for (int k = 0; k < p_; ++k) cycle[k] = add_vertex(0);
    add_face(cycle, 0);
    boundary_ = cycle;
  }

  void grow(int layer, std::int64_t max_vertices) {
    const int m = static_cast<int>(boundary_.size());
    std::vector<int> base;
    for (int i = 0; i < m; ++i) {
      const int k = q_ - degree(boundary_[i]);
      if (k < 0) throw Error(ErrorKind::NotHyperbolic, "boundary vertex above degree q");
      for (int j = 0; j < k; ++j) base.push_back(i);
    }
    const int S = static_cast<int>(base.size());
    if (S == 0) throw Error(ErrorKind::NotHyperbolic, "tiling closed up");

    // Sides each new face needs beyond the old boundary path and two spokes.
    std::vector<int> span(S);
    std::vector<int> extra(S);
    for (int s = 0; s < S; ++s) {
      const int t = (s + 1) % S;
      span[s] = (base[t] - base[s] + m) % m;
      if (t == 0 && span[s] == 0 && S > 1 && base[0] == base[S - 1] && m > 1)
        throw Error(ErrorKind::NotHyperbolic, "all spokes on one boundary vertex");
      extra[s] = p_ - span[s] - 2;
      if (extra[s] < 0) throw Error(ErrorKind::NotHyperbolic, "face cannot close across boundary");
    }

    std::int64_t added = 0;
    for (int e : extra) added += e;
    if (static_cast<std::int64_t>(incident_.size()) + added > max_vertices)
      throw Error(ErrorKind::TooLarge, "tiling ball exceeds vertex bound");

    int start = 0;
    while (extra[(start + S - 1) % S] == 0) ++start;

    std::vector<int> tip(S, -1);
    tip[start] = add_vertex(layer);
    for (int k = 1; k < S; ++k) {
      const int s = (start + k) % S;
      const int prev = (s + S - 1) % S;
      tip[s] = extra[prev] == 0 ? tip[prev] : add_vertex(layer);
    }

    std::vector<int> next_boundary;
    for (int k = 0; k < S; ++k) {
      const int s = (start + k) % S;
      const int t = (s + 1) % S;
      std::vector<int> cycle;
      for (int j = 0; j <= span[s]; ++j) cycle.push_back(boundary_[(base[t] - j + m) % m]);
      cycle.push_back(tip[s]);
      if (extra[s] > 0) next_boundary.push_back(tip[s]);
      for (int j = 1; j < extra[s]; ++j) {
        const int v = add_vertex(layer);
        cycle.push_back(v);
        next_boundary.push_back(v);
      }
      if (extra[s] > 0) cycle.push_back(tip[t]);
      add_face(std::move(cycle), layer);
    }
    boundary_ = std::move(next_boundary);
  }

  TilingBall finish(int layers) {
    TilingBall ball;
    ball.p_gon = p_;
    ball.q_deg = q_;
    ball.layers = layers;
    const int n = static_cast<int>(incident_.size());
    ball.graph = Graph(n, edges_);
    ball.faces = std::move(faces_);
    ball.face_edges = std::move(face_edges_);
    ball.edge_faces = std::move(edge_faces_);
    ball.vertex_layer = std::move(vertex_layer_);
    ball.face_layer = std::move(face_layer_);
    ball.boundary = boundary_;
    ball.interior_vertex_mask.assign(n, 1);
    for (int v : boundary_) ball.interior_vertex_mask[v] = 0;

    // Rotation: in a ccw face (u, v, w) the edge v-u follows v-w around v.
    std::vector<std::unordered_map<int, int>> succ(n);
    std::vector<std::unordered_map<int, int>> has_pred(n);
    for (std::size_t f = 0; f < ball.faces.size(); ++f) {
      const auto& c = ball.faces[f];
      const auto& fe = ball.face_edges[f];
      const std::size_t k = c.size();
      for (std::size_t i = 0; i < k; ++i) {
        const int v = c[(i + 1) % k];
        const int to_w = fe[(i + 1) % k];
        const int to_u = fe[i];
        succ[v][to_w] = to_u;
        has_pred[v][to_u] = 1;
      }
    }
    ball.rotation.assign(n, {});
    for (int v = 0; v < n; ++v) {
      const auto inc = ball.graph.incident_edges(v);
      int first = *std::min_element(inc.begin(), inc.end());
      for (int e : inc) {
        if (!has_pred[v].count(e)) first = e;
      }
      int e = first;
      do {
        ball.rotation[v].push_back(e);
        auto it = succ[v].find(e);
        if (it == succ[v].end()) break;
        e = it->second;
      } while (e != first);
    }
    return ball;
  }

 private:
  int p_;
  int q_;
  std::vector<std::vector<int>> incident_;
  std::vector<int> vertex_layer_;
  std::vector<std::pair<int, int>> edges_;
  std::unordered_map<std::uint64_t, int> edge_index_;
  std::vector<std::array<int, 2>> edge_faces_;
  std::vector<std::vector<int>> faces_;
  std::vector<std::vector<int>> face_edges_;
  std::vector<int> face_layer_;
  std::vector<int> boundary_;
};

int other_end(const Graph& g, int e, int v) {
  const auto [a, b] = g.edge(e);
  return a == v ? b : a;
}

}  // namespace

TilingBall build_ball(int p_gon, int q_deg, int layers, std::int64_t max_vertices) {
  if (p_gon < 3 || q_deg < 3 || (p_gon - 2) * (q_deg - 2) <= 4)
    throw Error(ErrorKind::NotHyperbolic, "{" + std::to_string(p_gon) + "," + std::to_string(q_deg) + "} is not hyperbolic");
  if (layers < 1) throw Error(ErrorKind::Config, "need at least one layer");
  if (p_gon > max_vertices) throw Error(ErrorKind::TooLarge, "tiling ball exceeds vertex bound");
  BallBuilder builder(p_gon, q_deg);
  builder.seed();
  for (int layer = 1; layer < layers; ++layer) builder.grow(layer, max_vertices);
  return builder.finish(layers);
}

DualBall dual_ball(const TilingBall& ball) {
  DualBall dual;
  const int nf = ball.num_faces();
  dual.dual_edge.assign(ball.num_edges(), -1);
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < ball.num_edges(); ++e) {
    if (!ball.edge_is_interior(e)) continue;
    dual.dual_edge[e] = static_cast<int>(edges.size());
    dual.primal_edge.push_back(e);
    edges.emplace_back(ball.edge_faces[e][0], ball.edge_faces[e][1]);
  }
  dual.graph = Graph(nf, std::move(edges));

  dual.rotation.assign(nf, {});
  dual.interior_vertex_mask.assign(nf, 1);
  for (int f = 0; f < nf; ++f) {
    for (int e : ball.face_edges[f]) {
      if (dual.dual_edge[e] >= 0) {
        dual.rotation[f].push_back(dual.dual_edge[e]);
      } else {
        dual.interior_vertex_mask[f] = 0;
      }
    }
  }

  // Around an interior vertex the faces follow its rotation: the face
  // between consecutive edges e_i, e_{i+1} is on the left of e_{i+1}.
  for (int v = 0; v < ball.num_vertices(); ++v) {
    if (!ball.interior_vertex_mask[v]) continue;
    const auto& rot = ball.rotation[v];
    std::vector<int> cycle;
    for (std::size_t i = 0; i < rot.size(); ++i) {
      const int e0 = rot[i];
      const int e1 = rot[(i + 1) % rot.size()];
      for (int f : ball.edge_faces[e0]) {
        if (f >= 0 && (ball.edge_faces[e1][0] == f || ball.edge_faces[e1][1] == f)) {
          cycle.push_back(f);
          break;
        }
      }
    }
    dual.faces.push_back(std::move(cycle));
  }
  return dual;
}

std::vector<int> bfs_distances(const Graph& graph, int source) {
  std::vector<int> d(graph.num_vertices(), -1);
  std::deque<int> queue{source};
  d[source] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : graph.neighbors(v)) {
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return d;
}

int graph_distance(const TilingBall& ball, int u, int v) {
  if (u == v) return 0;
  const int d = bfs_distances(ball.graph, u)[v];
  if (d < 0) throw Error(ErrorKind::Disconnected, "vertices in different components");
  return d;
}

std::vector<geo::HPoint> embed(const TilingBall& ball) {
  const int p = ball.p_gon;
  const int n = ball.num_vertices();
  std::vector<geo::HPoint> pos(n);
  std::vector<std::uint8_t> placed(n, 0);
  if (ball.faces.empty()) return pos;

  const double circumradius = std::acosh(1.0 / (std::tan(geo::kPi / p) * std::tan(geo::kPi / ball.q_deg)));
  for (int k = 0; k < p; ++k) {
    pos[ball.faces[0][k]] = geo::HPoint(circumradius, geo::kTwoPi * k / p);
    placed[ball.faces[0][k]] = 1;
  }
  std::vector<std::uint8_t> face_done(ball.num_faces(), 0);
  face_done[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    const auto& c = ball.faces[f];
    for (int i = 0; i < p; ++i) {
      const int e = ball.face_edges[f][i];
      const int g = ball.edge_faces[e][0] == f ? ball.edge_faces[e][1] : ball.edge_faces[e][0];
      if (g < 0 || face_done[g]) continue;
      const int u = c[i];
      const int v = c[(i + 1) % p];
      const geo::Isometry mirror = geo::Isometry::reflection(pos[u], pos[v]);
      const auto& cg = ball.faces[g];
      const int at_v = static_cast<int>(std::find(cg.begin(), cg.end(), v) - cg.begin());
      for (int k = 1; k <= p - 2; ++k) {
        const int target = cg[(at_v + 1 + k) % p];
        const int source = c[(i + 1 + (p - 1 - k)) % p];
        if (!placed[target]) {
          pos[target] = mirror.apply(pos[source]);
          placed[target] = 1;
        }
      }
      face_done[g] = 1;
      queue.push_back(g);
    }
  }
  return pos;
}

void write_tiling(std::ostream& out, const TilingBall& ball, const DualBall& dual) {
  out << "#pq v1 p=" << ball.p_gon << " q=" << ball.q_deg << " L=" << ball.layers << '\n';
  out << "VERTICES " << ball.num_vertices() << '\n';
  for (int v = 0; v < ball.num_vertices(); ++v) {
    out << v << ' ' << ball.vertex_layer[v] << ' ' << int(ball.interior_vertex_mask[v]);
    for (int e : ball.rotation[v]) out << ' ' << other_end(ball.graph, e, v);
    out << '\n';
  }
  out << "EDGES " << ball.num_edges() << '\n';
  for (int e = 0; e < ball.num_edges(); ++e) {
    const auto [a, b] = ball.graph.edge(e);
    out << e << ' ' << a << ' ' << b << ' ' << ball.edge_faces[e][0] << ' ' << ball.edge_faces[e][1] << '\n';
  }
  out << "FACES " << ball.num_faces() << '\n';
  for (int f = 0; f < ball.num_faces(); ++f) {
    out << f << ' ' << ball.face_layer[f];
    for (int v : ball.faces[f]) out << ' ' << v;
    out << '\n';
  }
  out << "DUAL " << dual.graph.num_edges() << '\n';
  for (int d = 0; d < dual.graph.num_edges(); ++d) {
    const auto [a, b] = dual.graph.edge(d);
    out << d << ' ' << dual.primal_edge[d] << ' ' << a << ' ' << b << '\n';
  }
}

}  // namespace hyperperc
