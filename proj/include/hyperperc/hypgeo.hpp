#pragma once

// Hyperbolic plane primitives. Points are stored in hyperbolic polar form
// (rho, theta); Poincare disk, Klein and hyperboloid coordinates are derived
// on demand.

#include <complex>
#include <numbers>
#include <optional>
#include <vector>

namespace hyperperc::geo {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Largest radius at which disk coordinates still carry ~1e-5 of headroom.
inline constexpr double kDefaultRadiusCap = 12.0;

using Complex = std::complex<double>;

/// Point of the hyperboloid x0^2 - x1^2 - x2^2 = 1, x0 > 0.
struct Vec3 {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Minkowski form -x0*y0 + x1*y1 + x2*y2.
double minkowski_dot(const Vec3& a, const Vec3& b);

struct HPoint {
  double rho = 0.0;
  double theta = 0.0;

  HPoint() = default;
  /// Normalizes theta into [0, 2pi) and folds negative rho through the origin.
  HPoint(double rho, double theta);

  static HPoint origin() { return {}; }
  static HPoint from_disk(Complex z);
  static HPoint from_hyperboloid(const Vec3& v);

  /// Poincare disk coordinate, radius tanh(rho/2).
  Complex disk() const;
  /// Beltrami-Klein coordinate, radius tanh(rho).
  Complex klein() const;
  Vec3 hyperboloid() const;

  friend bool operator==(const HPoint&, const HPoint&) = default;
};

double dist(const HPoint& a, const HPoint& b);

/// Area of a hyperbolic disk of radius r: 2*pi*(cosh r - 1).
double ball_area(double r);

/// Hyperbolic circumcenter of three points, or nullopt when the triple has no
/// circumscribed hyperbolic circle (its Euclidean circumcircle in the disk
/// model meets the ideal boundary). Throws Error{Degenerate} for coincident
/// points or points on one geodesic.
std::optional<HPoint> circumcenter(const HPoint& a, const HPoint& b, const HPoint& c);

/// Orientation-preserving or -reversing isometry acting on the Poincare disk
/// as z -> (alpha*w + beta) / (conj(beta)*w + conj(alpha)), where w = z or
/// conj(z) when reversing. |alpha|^2 - |beta|^2 = 1.
class Isometry {
 public:
  Isometry() = default;

  static Isometry identity() { return {}; }
  /// The hyperbolic translation along the geodesic through o and m taking o to m.
  static Isometry translation(const HPoint& m);
  static Isometry rotation(double angle);
  /// Reflection in the real axis.
  static Isometry conjugation();
  /// Reflection in the geodesic through two distinct points.
  static Isometry reflection(const HPoint& a, const HPoint& b);

  Complex apply_disk(Complex z) const;
  HPoint apply(const HPoint& p) const;

  /// (*this * g)(x) == this->apply(g.apply(x)).
  Isometry operator*(const Isometry& g) const;
  Isometry inverse() const;

  bool reverses_orientation() const { return reflect_; }
  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }

 private:
  Isometry(Complex alpha, Complex beta, bool reflect) : alpha_(alpha), beta_(beta), reflect_(reflect) {}

  Complex alpha_{1.0, 0.0};
  Complex beta_{0.0, 0.0};
  bool reflect_ = false;
};

inline HPoint apply(const Isometry& g, const HPoint& a) { return g.apply(a); }

/// Counterclockwise list of vertices joined by geodesic segments.
struct GeodesicPolygon {
  std::vector<HPoint> vertices;
};

/// Interior angle at `vertex` between the geodesics towards `next` and
/// `prev`, for a counterclockwise boundary. In (0, 2pi).
double interior_angle(const HPoint& prev, const HPoint& vertex, const HPoint& next);

/// Area by angle defect: sum(pi - alpha_i) - 2pi. Throws Error{Degenerate}
/// for fewer than three vertices or a nonpositive result.
double polygon_area(const GeodesicPolygon& polygon);

/// Hyperbolic distance from the origin to the geodesic segment [a, b].
double origin_distance_to_segment(const HPoint& a, const HPoint& b);

/// Whether the origin lies in the closed convex polygon (counterclockwise).
bool polygon_contains_origin(const GeodesicPolygon& polygon);

/// Whether p lies in the closed convex polygon (counterclockwise).
bool polygon_contains(const GeodesicPolygon& polygon, const HPoint& p);

}  // namespace hyperperc::geo
