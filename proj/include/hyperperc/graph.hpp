#pragma once

#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace hyperperc {

/// Undirected graph with stable edge ids and CSR adjacency.
class Graph {
 public:
  Graph() = default;
  Graph(int num_vertices, std::vector<std::pair<int, int>> edges);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::pair<int, int> edge(int e) const { return edges_[e]; }

  std::span<const int> neighbors(int v) const {
    return {adj_vertex_.data() + offsets_[v], adj_vertex_.data() + offsets_[v + 1]};
  }
  std::span<const int> incident_edges(int v) const {
    return {adj_edge_.data() + offsets_[v], adj_edge_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }

 private:
  int num_vertices_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> offsets_{0};
  std::vector<int> adj_vertex_;
  std::vector<int> adj_edge_;
};

/// Disjoint sets with union by size and path halving.
class UnionFind {
 public:
  UnionFind() = default;
  explicit UnionFind(int n) { reset(n); }

  void reset(int n) {
    parent_.resize(n);
    size_.assign(n, 1);
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns the surviving root, or -1 if already joined.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return -1;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

  int size_of(int x) { return size_[find(x)]; }
  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

}  // namespace hyperperc
