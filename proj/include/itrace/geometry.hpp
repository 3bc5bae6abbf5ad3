#pragma once

#include <algorithm>
#include <cmath>

namespace itrace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Vec2&) const = default;

  double length() const { return std::hypot(x, y); }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).length(); }

constexpr Vec2 lerp(Vec2 a, Vec2 b, double t) { return a + (b - a) * t; }

// Axis-aligned rectangle, origin at the top-left corner.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  constexpr double left() const { return x; }
  constexpr double right() const { return x + w; }
  constexpr double top() const { return y; }
  constexpr double bottom() const { return y + h; }
  constexpr Vec2 center() const { return {x + w / 2, y + h / 2}; }

  // Closed containment (the border counts as inside).
  constexpr bool contains(Vec2 p) const {
    return p.x >= left() && p.x <= right() && p.y >= top() && p.y <= bottom();
  }

  constexpr bool contains_with_margin(Vec2 p, double margin) const {
    return p.x > left() + margin && p.x < right() - margin && p.y > top() + margin &&
           p.y < bottom() - margin;
  }

  constexpr bool intersects(const Rect& o) const {
    return left() < o.right() && o.left() < right() && top() < o.bottom() && o.top() < bottom();
  }

  constexpr bool operator==(const Rect&) const = default;
};

constexpr bool overlaps(const Rect& a, const Rect& b) { return a.intersects(b); }

}  // namespace itrace
