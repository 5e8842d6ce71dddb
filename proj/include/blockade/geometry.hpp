#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blockade/rational.hpp"

namespace blockade {

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

/// Direction or displacement; kept separate from Point so that affine
/// combinations stay explicit.
struct Vec {
  Rational x;
  Rational y;
};

inline Vec operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(const Point& a, const Vec& v) { return {a.x + v.x, a.y + v.y}; }
inline Vec operator*(const Rational& s, const Vec& v) { return {s * v.x, s * v.y}; }
inline Rational dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }
inline Rational cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline Rational norm_sq(const Vec& v) { return dot(v, v); }
/// Counterclockwise quarter turn.
inline Vec perp(const Vec& v) { return {-v.y, v.x}; }
inline Point midpoint(const Point& a, const Point& b) {
  return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}
inline Rational dist_sq(const Point& a, const Point& b) { return norm_sq(a - b); }

/// Circle with rational center and rational squared radius; the radius
/// itself is never formed.
class Circle {
 public:
  /// Throws Error("DegenerateCircle") unless radius_sq > 0.
  Circle(Point center, Rational radius_sq);

  const Point& center() const { return center_; }
  const Rational& radius_sq() const { return radius_sq_; }

  /// |x - c|^2 - r^2; negative strictly inside.
  Rational power(const Point& x) const { return dist_sq(x, center_) - radius_sq_; }

  friend bool operator==(const Circle& a, const Circle& b) {
    return a.center_ == b.center_ && a.radius_sq_ == b.radius_sq_;
  }

 private:
  Point center_;
  Rational radius_sq_;
};

/// Sign of det[[1,1,1],[px,qx,rx],[py,qy,ry]]: +1 for a left turn p->q->r.
int orient(const Point& p, const Point& q, const Point& r);
Rational orient_value(const Point& p, const Point& q, const Point& r);

/// -1 strictly inside, 0 on the circle, +1 outside.
int in_circle_sign(const Circle& c, const Point& p);

Circle circle_from_diameter(const Point& a, const Point& b);

/// Circle through p and q whose tangent at p has direction `tangent_dir`.
/// Throws Error("NoSolution") when q lies on the tangent line and
/// Error("DegenerateCircle") for a zero direction.
Circle circle_through_tangent_at(const Point& p, const Point& q, const Vec& tangent_dir);

/// Counterclockwise convex hull. Points lying on the hull boundary without
/// being vertices are dropped from `vertices` and counted in
/// `boundary_points`.
struct ConvexChain {
  std::vector<Point> vertices;
  std::size_t boundary_points = 0;

  bool degenerate_boundary() const { return boundary_points > 0; }
  /// At least three non-collinear vertices.
  bool full_dimensional() const { return vertices.size() >= 3; }
};

ConvexChain convex_hull(std::span<const Point> points);

/// True iff x is not in the closed hull.
bool strictly_outside(const ConvexChain& hull, const Point& x);
/// True iff x is in the open interior of the hull (never for degenerate hulls).
bool strictly_inside(const ConvexChain& hull, const Point& x);

/// Outward half-plane of a hull edge: points x with normal . x > offset lie
/// strictly beyond the edge's supporting line.
struct HalfPlane {
  Vec normal;
  Rational offset;

  Rational eval(const Point& x) const { return dot(normal, Vec{x.x, x.y}) - offset; }
};

/// One outward half-plane per edge of a full-dimensional hull.
std::vector<HalfPlane> outward_half_planes(const ConvexChain& hull);

/// Exact sign of a + b*sqrt(c) - d, c >= 0.
int compare_sqrt_expr(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

/// Element a + b*sqrt(d) of a real quadratic field, d >= 0.
struct QuadraticNumber {
  Rational a;
  Rational b;
  Rational d;

  int sign() const { return compare_sqrt_expr(a, b, d, 0); }
  double approx() const;
};

/// Point whose coordinates share one square root: (ax + bx*sqrt(d), ay + by*sqrt(d)).
struct QuadraticPoint {
  Rational ax, bx, ay, by, d;

  QuadraticNumber x() const { return {ax, bx, d}; }
  QuadraticNumber y() const { return {ay, by, d}; }
};

/// Intersection points of two circle boundaries; empty when they miss,
/// a single point when tangent. Throws for concentric circles.
std::vector<QuadraticPoint> circle_intersections(const Circle& a, const Circle& b);

/// Sign of the orientation of (p, q, x) for an algebraic point x.
int orient(const Point& p, const Point& q, const QuadraticPoint& x);

/// Strict interior test of an algebraic point against a full-dimensional hull.
bool strictly_inside(const ConvexChain& hull, const QuadraticPoint& x);

}  // namespace blockade
