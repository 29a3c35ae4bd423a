#pragma once

#include <cmath>

namespace lorlim {

/// Point (or displacement) in chart coordinates. `y` is the time axis.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

using Point = Vec2;

inline Point lerp(Point a, Point b, double s) { return a + (b - a) * s; }

/// Symmetric 2x2 tensor in (x, y) component order.
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  static constexpr Sym2 diag(double a, double b) { return {a, 0.0, b}; }

  constexpr double quad(Vec2 v) const {
    return xx * v.x * v.x + 2.0 * xy * v.x * v.y + yy * v.y * v.y;
  }
  constexpr double bilinear(Vec2 u, Vec2 v) const {
    return xx * u.x * v.x + xy * (u.x * v.y + u.y * v.x) + yy * u.y * v.y;
  }
  constexpr double det() const { return xx * yy - xy * xy; }
  constexpr double trace() const { return xx + yy; }
  constexpr Sym2 inverse() const {
    const double d = det();
    return {yy / d, -xy / d, xx / d};
  }
  constexpr Sym2 operator*(double s) const { return {xx * s, xy * s, yy * s}; }
  constexpr bool operator==(const Sym2&) const = default;

  /// Eigenvalues in ascending order.
  void eigenvalues(double& lo, double& hi) const {
    const double m = 0.5 * (xx + yy);
    const double r = std::hypot(0.5 * (xx - yy), xy);
    lo = m - r;
    hi = m + r;
  }
};

}  // namespace lorlim
