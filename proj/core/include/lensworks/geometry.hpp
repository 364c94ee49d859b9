#ifndef LENSWORKS_GEOMETRY_HPP
#define LENSWORKS_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace lensworks {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double norm() const { return std::hypot(x, y); }
  double dist(const Vec2& o) const { return std::hypot(x - o.x, y - o.y); }
};

/// Which square packing a circle belongs to on a lens surface.
/// Circles outside the lens surface (triangular packings, fractals) use None.
enum class Packing : std::uint8_t { None, A, B };

struct Circle {
  std::int64_t id = 0;
  Vec2 center;
  double radius = 1.0;
  double polarity = 0.0;  // radians; direction of the production-rule axis
  int level = 0;
  Packing packing = Packing::None;
};

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool empty() const { return x1 <= x0 || y1 <= y0; }
  bool contains(const Vec2& p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  Rect expanded(double m) const { return {x0 - m, y0 - m, x1 + m, y1 + m}; }
  Rect shrunk(double m) const { return expanded(-m); }
};

/// Circle/rectangle intersection test (center-distance to the clamped point).
inline bool circle_intersects_rect(const Circle& c, const Rect& r) {
  double px = std::fmax(r.x0, std::fmin(c.center.x, r.x1));
  double py = std::fmax(r.y0, std::fmin(c.center.y, r.y1));
  double dx = c.center.x - px;
  double dy = c.center.y - py;
  return dx * dx + dy * dy <= c.radius * c.radius;
}

}  // namespace lensworks

#endif  // LENSWORKS_GEOMETRY_HPP
