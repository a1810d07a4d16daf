#include "hyperperc/graph.hpp"

namespace hyperperc {

Graph::Graph(int num_vertices, std::vector<std::pair<int, int>> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  offsets_.assign(num_vertices_ + 1, 0);
  for (const auto& [a, b] : edges_) {
    ++offsets_[a + 1];
    ++offsets_[b + 1];
  }
  for (int v = 0; v < num_vertices_; ++v) offsets_[v + 1] += offsets_[v];
  adj_vertex_.resize(offsets_.back());
  adj_edge_.resize(offsets_.back());
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const auto [a, b] = edges_[e];
    adj_vertex_[fill[a]] = b;
    adj_edge_[fill[a]++] = e;
    adj_vertex_[fill[b]] = a;
    adj_edge_[fill[b]++] = e;
  }
}

}  // namespace hyperperc
