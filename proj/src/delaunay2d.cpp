#include "hyperperc/delaunay2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperperc/error.hpp"

namespace hyperperc::planar {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kEps = 0x1.0p-53;
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

template <class T>
int sign(const T& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

int orient_exact(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Rational acx = Rational(a.x) - Rational(c.x), bcx = Rational(b.x) - Rational(c.x);
  const Rational acy = Rational(a.y) - Rational(c.y), bcy = Rational(b.y) - Rational(c.y);
  return sign(acx * bcy - acy * bcx);
}

int incircle_exact(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const Rational adx = Rational(a.x) - Rational(d.x), ady = Rational(a.y) - Rational(d.y);
  const Rational bdx = Rational(b.x) - Rational(d.x), bdy = Rational(b.y) - Rational(d.y);
  const Rational cdx = Rational(c.x) - Rational(d.x), cdy = Rational(c.y) - Rational(d.y);
  const Rational alift = adx * adx + ady * ady;
  const Rational blift = bdx * bdx + bdy * bdy;
  const Rational clift = cdx * cdx + cdy * cdy;
  return sign(alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) + clift * (adx * bdy - bdx * ady));
}

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, int order) {
  const std::uint32_t n = 1u << order;
  std::uint64_t d = 0;
  for (std::uint32_t s = n >> 1; s > 0; s >>= 1) {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = n - 1 - x;
        y = n - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

std::vector<int> hilbert_order(std::span<const Vec2> pts) {
  constexpr int kOrder = 16;
  const double side = static_cast<double>((1u << kOrder) - 1);
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  if (!pts.empty()) {
    lo_x = hi_x = pts[0].x;
    lo_y = hi_y = pts[0].y;
  }
  for (const auto& p : pts) {
    lo_x = std::min(lo_x, p.x), hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y), hi_y = std::max(hi_y, p.y);
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
  std::vector<std::uint64_t> key(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto gx = static_cast<std::uint32_t>((pts[i].x - lo_x) / span * side);
    const auto gy = static_cast<std::uint32_t>((pts[i].y - lo_y) / span * side);
    key[i] = hilbert_index(gx, gy, kOrder);
  }
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
  return order;
}

class Builder {
 public:
  explicit Builder(std::span<const Vec2> input) {
    out_.num_real = static_cast<int>(input.size());
    out_.points.assign(input.begin(), input.end());
    constexpr double kFar = 100.0;
    out_.points.push_back({-kFar, -kFar});
    out_.points.push_back({kFar, -kFar});
    out_.points.push_back({0.0, kFar});
    const int s = out_.num_real;
    tris_.push_back({{s, s + 1, s + 2}, {-1, -1, -1}});
    alive_.push_back(1);
    stamp_.push_back(0);
  }

  void insert(int pi) {
    const Vec2& p = out_.points[pi];
    const int start = locate(p);
    for (int v : tris_[start].v) {
      if (out_.points[v].x == p.x && out_.points[v].y == p.y)
        throw Error(ErrorKind::DegenerateInput, "duplicate point in triangulation");
    }

    ++current_stamp_;
    cavity_.clear();
    stack_.clear();
    stack_.push_back(start);
    stamp_[start] = current_stamp_;
    while (!stack_.empty()) {
      const int t = stack_.back();
      stack_.pop_back();
      cavity_.push_back(t);
      for (int nb : tris_[t].adj) {
        if (nb < 0 || stamp_[nb] == current_stamp_ || stamp_[nb] == -current_stamp_) continue;
        const auto& v = tris_[nb].v;
        if (incircle(out_.points[v[0]], out_.points[v[1]], out_.points[v[2]], p) > 0) {
          stamp_[nb] = current_stamp_;
          stack_.push_back(nb);
        } else {
          stamp_[nb] = -current_stamp_;
        }
      }
    }

    fan_.clear();
    for (int t : cavity_) {
      alive_[t] = 0;
      for (int i = 0; i < 3; ++i) {
        const int nb = tris_[t].adj[i];
        if (nb >= 0 && stamp_[nb] == current_stamp_) continue;
        const int a = tris_[t].v[(i + 1) % 3];
        const int b = tris_[t].v[(i + 2) % 3];
        const int nt = static_cast<int>(tris_.size());
        tris_.push_back({{a, b, pi}, {-1, -1, nb}});
        alive_.push_back(1);
        stamp_.push_back(0);
        if (nb >= 0) {
          for (int& back : tris_[nb].adj) {
            if (back == t) back = nt;
          }
        }
        fan_.push_back({a, b, nt});
      }
    }
    for (const auto& e : fan_) {
      Triangle& tri = tris_[e.tri];
      for (const auto& f : fan_) {
        if (f.a == e.b) tri.adj[0] = f.tri;  // edge b-p
        if (f.b == e.a) tri.adj[1] = f.tri;  // edge p-a
      }
    }
    last_ = fan_.back().tri;
  }

  Triangulation finish() {
    std::vector<int> remap(tris_.size(), -1);
    int n = 0;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (alive_[t]) remap[t] = n++;
    }
    out_.triangles.reserve(n);
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (!alive_[t]) continue;
      Triangle tri = tris_[t];
      for (int& a : tri.adj) a = a >= 0 ? remap[a] : -1;
      out_.triangles.push_back(tri);
    }
    return std::move(out_);
  }

 private:
  struct FanEdge {
    int a;
    int b;
    int tri;
  };

  int locate(const Vec2& p) {
    int t = last_;
    std::uint32_t rot = 0;
    for (;;) {
      const Triangle& tri = tris_[t];
      int next = -1;
      rot = rot * 1664525u + 1013904223u;
      const int off = static_cast<int>((rot >> 16) % 3);
      for (int k = 0; k < 3; ++k) {
        const int i = (k + off) % 3;
        const Vec2& a = out_.points[tri.v[(i + 1) % 3]];
        const Vec2& b = out_.points[tri.v[(i + 2) % 3]];
        if (orient2d(a, b, p) < 0) {
          next = tri.adj[i];
          break;
        }
      }
      if (next < 0) return t;
      t = next;
    }
  }

  Triangulation out_;
  std::vector<Triangle> tris_;
  std::vector<std::uint8_t> alive_;
  std::vector<int> stamp_;
  int current_stamp_ = 0;
  int last_ = 0;
  std::vector<int> cavity_;
  std::vector<int> stack_;
  std::vector<FanEdge> fan_;
};

}  // namespace

int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;
  const double bound = kOrientBound * (std::abs(detleft) + std::abs(detright));
  if (det > bound || -det > bound) return sign(det);
  return orient_exact(a, b, c);
}

int incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kIncircleBound * permanent;
  if (det > bound || -det > bound) return sign(det);
  return incircle_exact(a, b, c, d);
}

Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c, double* radius2) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / d;
  const double uy = (bx * c2 - cx * b2) / d;
  if (radius2) *radius2 = ux * ux + uy * uy;
  return {a.x + ux, a.y + uy};
}

Triangulation triangulate(std::span<const Vec2> points) {
  Builder builder(points);
  for (int i : hilbert_order(points)) builder.insert(i);
  return builder.finish();
}

}  // namespace hyperperc::planar
