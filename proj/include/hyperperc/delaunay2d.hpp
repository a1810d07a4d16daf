#pragma once

// Euclidean Delaunay triangulation (Bowyer-Watson, exact predicates). Used on
// Poincare disk coordinates by the hyperbolic Voronoi layer.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace hyperperc::planar {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Sign of the orientation determinant: > 0 when a, b, c turn left.
int orient2d(const Vec2& a, const Vec2& b, const Vec2& c);

/// > 0 when d lies strictly inside the circle through the counterclockwise
/// triple a, b, c.
int incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

/// Euclidean circumcenter and squared radius (floating point).
Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c, double* radius2 = nullptr);

struct Triangle {
  std::array<int, 3> v;    // counterclockwise
  std::array<int, 3> adj;  // adj[i] is across the edge opposite v[i]; -1 if none
};

/// Triangulation of `points` plus three enclosing super vertices stored at
/// indices num_real, num_real+1, num_real+2.
struct Triangulation {
  std::vector<Vec2> points;
  std::vector<Triangle> triangles;
  int num_real = 0;

  bool is_super(int v) const { return v >= num_real; }
};

/// Throws Error{DegenerateInput} on duplicate points. Inputs must lie well
/// inside the super triangle (|x|, |y| < 4).
Triangulation triangulate(std::span<const Vec2> points);

}  // namespace hyperperc::planar
