#ifndef LOOPFORCE_VEC2_HPP
#define LOOPFORCE_VEC2_HPP

#include <cmath>

namespace loopforce {

// Plane vector / point. Plain aggregate so it can cross the C boundary by value.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// z-component of the 3D cross product.
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

constexpr double norm2(const Vec2& v) { return dot(v, v); }

// Rotation by -90 degrees: (x, y) -> (y, -x). This is the matrix [[0,1],[-1,0]]
// used by the discrete stencils, and it maps the tangent of a counter-clockwise
// curve to its outward normal.
constexpr Vec2 rotate_cw(const Vec2& v) { return {v.y, -v.x}; }

}  // namespace loopforce

#endif  // LOOPFORCE_VEC2_HPP
