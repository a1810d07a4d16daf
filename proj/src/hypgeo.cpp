#include "hyperperc/hypgeo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hyperperc/error.hpp"

namespace hyperperc::geo {

namespace {

double wrap_angle(double t) {
  double w = std::fmod(t, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u.x1 * v.x2 - u.x2 * v.x1, u.x2 * v.x0 - u.x0 * v.x2, u.x0 * v.x1 - u.x1 * v.x0};
}

Vec3 sub(const Vec3& a, const Vec3& b) { return {a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2}; }

double euclid_norm(const Vec3& v) { return std::sqrt(v.x0 * v.x0 + v.x1 * v.x1 + v.x2 * v.x2); }

double cross2(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

}  // namespace

double minkowski_dot(const Vec3& a, const Vec3& b) { return -a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2; }

HPoint::HPoint(double r, double t) {
  if (r < 0.0) {
    r = -r;
    t += kPi;
  }
  rho = r;
  theta = wrap_angle(t);
}

HPoint HPoint::from_disk(Complex z) {
  double r = std::abs(z);
  if (r == 0.0) return {};
  r = std::min(r, std::nextafter(1.0, 0.0));
  return {2.0 * std::atanh(r), std::arg(z)};
}

HPoint HPoint::from_hyperboloid(const Vec3& v) {
  const double s = std::hypot(v.x1, v.x2);
  if (s == 0.0) return {};
  return {std::asinh(s), std::atan2(v.x2, v.x1)};
}

Complex HPoint::disk() const { return std::polar(std::tanh(0.5 * rho), theta); }

Complex HPoint::klein() const { return std::polar(std::tanh(rho), theta); }

Vec3 HPoint::hyperboloid() const {
  const double s = std::sinh(rho);
  return {std::cosh(rho), s * std::cos(theta), s * std::sin(theta)};
}

double dist(const HPoint& a, const HPoint& b) {
  // cosh d = cosh r1 cosh r2 - sinh r1 sinh r2 cos dt, rewritten in half-angle
  // form so that small distances far from the origin keep full precision.
  const double sh = std::sinh(0.5 * (a.rho - b.rho));
  const double st = std::sin(0.5 * (a.theta - b.theta));
  const double h = sh * sh + std::sinh(a.rho) * std::sinh(b.rho) * st * st;
  return 2.0 * std::asinh(std::sqrt(std::max(h, 0.0)));
}

double ball_area(double r) {
  // cosh r - 1 = 2 sinh^2(r/2), exact near 0
  const double s = std::sinh(0.5 * r);
  return kTwoPi * 2.0 * s * s;
}

namespace {

std::optional<HPoint> circumcenter_near_origin(const HPoint& a, const HPoint& b, const HPoint& c) {
  const Vec3 A = a.hyperboloid();
  const Vec3 B = b.hyperboloid();
  const Vec3 C = c.hyperboloid();
  // Equidistance from A, B, C means <m, A-B> = <m, A-C> = 0 in the Minkowski
  // form, so J*m is orthogonal (Euclidean) to both differences.
  const Vec3 u = sub(A, B);
  const Vec3 v = sub(A, C);
  const Vec3 w = cross(u, v);
  // On one geodesic iff A, B, C span a plane through the origin.
  const double det = A.x0 * w.x0 + A.x1 * w.x1 + A.x2 * w.x2;
  if (std::abs(det) <= 1e-15 * euclid_norm(A) * euclid_norm(w) || euclid_norm(w) == 0.0)
    throw Error(ErrorKind::Degenerate, "collinear circumcenter input");

  Vec3 m{-w.x0, w.x1, w.x2};
  const double q = minkowski_dot(m, m);
  if (!(q < 0.0)) return std::nullopt;
  const double n = std::sqrt(-q);
  if (m.x0 < 0.0) {
    m = {-m.x0, -m.x1, -m.x2};
  }
  return HPoint::from_hyperboloid({m.x0 / n, m.x1 / n, m.x2 / n});
}

}  // namespace

std::optional<HPoint> circumcenter(const HPoint& a, const HPoint& b, const HPoint& c) {
  constexpr double kCoincident = 1e-12;
  if (dist(a, b) < kCoincident || dist(b, c) < kCoincident || dist(a, c) < kCoincident)
    throw Error(ErrorKind::Degenerate, "coincident circumcenter input");
  // Hyperboloid coordinates grow like e^rho; solving with a moved to the
  // origin keeps them of the size of the triangle.
  const Isometry to_a = Isometry::translation(a);
  const Isometry from_a = to_a.inverse();
  const auto m = circumcenter_near_origin(HPoint::origin(), from_a.apply(b), from_a.apply(c));
  if (!m) return std::nullopt;
  return to_a.apply(*m);
}

Isometry Isometry::translation(const HPoint& m) {
  const Complex a = m.disk();
  const double s = std::sqrt(1.0 - std::norm(a));
  return {Complex(1.0 / s, 0.0), a / s, false};
}

Isometry Isometry::rotation(double angle) { return {std::polar(1.0, 0.5 * angle), Complex(0.0, 0.0), false}; }

Isometry Isometry::conjugation() { return {Complex(1.0, 0.0), Complex(0.0, 0.0), true}; }

Isometry Isometry::reflection(const HPoint& a, const HPoint& b) {
  const Isometry to_origin = translation(a).inverse();
  const Isometry align = rotation(-std::arg(to_origin.apply_disk(b.disk()))) * to_origin;
  return align.inverse() * conjugation() * align;
}

Complex Isometry::apply_disk(Complex z) const {
  const Complex w = reflect_ ? std::conj(z) : z;
  return (alpha_ * w + beta_) / (std::conj(beta_) * w + std::conj(alpha_));
}

HPoint Isometry::apply(const HPoint& p) const { return HPoint::from_disk(apply_disk(p.disk())); }

Isometry Isometry::operator*(const Isometry& g) const {
  // f(g(z)) = M_f * c_f(M_g * c_g(z)); pushing the conjugation of f through
  // M_g conjugates its entries.
  const Complex a2 = reflect_ ? std::conj(g.alpha_) : g.alpha_;
  const Complex b2 = reflect_ ? std::conj(g.beta_) : g.beta_;
  const Complex a = alpha_ * a2 + beta_ * std::conj(b2);
  const Complex b = alpha_ * b2 + beta_ * std::conj(a2);
  return {a, b, reflect_ != g.reflect_};
}

Isometry Isometry::inverse() const {
  if (!reflect_) return {std::conj(alpha_), -beta_, false};
  return {alpha_, -std::conj(beta_), true};
}

double interior_angle(const HPoint& prev, const HPoint& vertex, const HPoint& next) {
  const Isometry to_origin = Isometry::translation(vertex).inverse();
  const Complex u = to_origin.apply_disk(prev.disk());
  const Complex w = to_origin.apply_disk(next.disk());
  return wrap_angle(std::arg(u) - std::arg(w));
}

double polygon_area(const GeodesicPolygon& polygon) {
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  if (n < 3) throw Error(ErrorKind::Degenerate, "polygon with fewer than 3 vertices");
  double defect = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double alpha = interior_angle(v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
    defect += kPi - alpha;
  }
  const double area = defect - kTwoPi;
  if (!(area > 0.0)) throw Error(ErrorKind::Degenerate, "angle sum not below (n-2)pi");
  return area;
}

double origin_distance_to_segment(const HPoint& a, const HPoint& b) {
  // Geodesics are chords in the Klein model, and the hyperbolic foot of the
  // perpendicular from the origin is the Euclidean one.
  const Complex ka = a.klein();
  const Complex kb = b.klein();
  const Complex d = kb - ka;
  const double len2 = std::norm(d);
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(-(ka.real() * d.real() + ka.imag() * d.imag()) / len2, 0.0, 1.0);
  const double r = std::min(std::abs(ka + t * d), std::nextafter(1.0, 0.0));
  return std::atanh(r);
}

bool polygon_contains(const GeodesicPolygon& polygon, const HPoint& p) {
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  if (n < 3) return false;
  const Complex kp = p.klein();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = v[i].klein();
    const Complex b = v[(i + 1) % n].klein();
    if (cross2(b - a, kp - a) < 0.0) return false;
  }
  return true;
}

bool polygon_contains_origin(const GeodesicPolygon& polygon) { return polygon_contains(polygon, HPoint::origin()); }

}  // namespace hyperperc::geo
