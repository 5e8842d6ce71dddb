#include "blockade/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace blockade {

Circle::Circle(Point center, Rational radius_sq)
    : center_(std::move(center)), radius_sq_(std::move(radius_sq)) {
  if (radius_sq_ <= 0) {
    throw Error("DegenerateCircle", "circle radius must be positive, got r^2 = " + to_string(radius_sq_));
  }
}

Rational orient_value(const Point& p, const Point& q, const Point& r) {
  return cross(q - p, r - p);
}

int orient(const Point& p, const Point& q, const Point& r) { return sign(orient_value(p, q, r)); }

int in_circle_sign(const Circle& c, const Point& p) { return sign(c.power(p)); }

Circle circle_from_diameter(const Point& a, const Point& b) {
  if (a == b) throw Error("DegenerateCircle", "diameter endpoints coincide");
  return Circle(midpoint(a, b), dist_sq(a, b) / 4);
}

Circle circle_through_tangent_at(const Point& p, const Point& q, const Vec& tangent_dir) {
  if (tangent_dir.x == 0 && tangent_dir.y == 0) {
    throw Error("DegenerateCircle", "zero tangent direction");
  }
  // Center p + s*n with n normal to the tangent; equidistance from p and q
  // is linear in s.
  const Vec n = perp(tangent_dir);
  const Vec pq = q - p;
  const Rational denom = 2 * dot(n, pq);
  if (denom == 0) {
    throw Error("NoSolution", "second point lies on the tangent line");
  }
  const Rational s = norm_sq(pq) / denom;
  const Vec offset = s * n;
  return Circle(p + offset, norm_sq(offset));
}

ConvexChain convex_hull(std::span<const Point> input) {
  std::vector<Point> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  ConvexChain hull;
  if (pts.size() <= 2) {
    hull.vertices = pts;
    return hull;
  }

  // Monotone chain dropping collinear points.
  std::vector<Point> chain;
  chain.reserve(2 * pts.size());
  for (const Point& p : pts) {
    while (chain.size() >= 2 && orient(chain[chain.size() - 2], chain.back(), p) <= 0) chain.pop_back();
    chain.push_back(p);
  }
  const std::size_t lower = chain.size() + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (chain.size() >= lower && orient(chain[chain.size() - 2], chain.back(), *it) <= 0) chain.pop_back();
    chain.push_back(*it);
  }
  chain.pop_back();

  if (chain.size() < 3) {
    hull.vertices = {pts.front(), pts.back()};
  } else {
    hull.vertices = std::move(chain);
  }

  const auto& v = hull.vertices;
  for (const Point& p : pts) {
    if (std::find(v.begin(), v.end(), p) != v.end()) continue;
    const std::size_t m = v.size();
    const std::size_t edges = m == 2 ? 1 : m;
    for (std::size_t i = 0; i < edges; ++i) {
      const Point& a = v[i];
      const Point& b = v[(i + 1) % m];
      if (orient(a, b, p) == 0 && dot(p - a, p - b) < 0) {
        ++hull.boundary_points;
        break;
      }
    }
  }
  return hull;
}

bool strictly_outside(const ConvexChain& hull, const Point& x) {
  const auto& v = hull.vertices;
  if (v.empty()) return true;
  if (v.size() == 1) return !(x == v[0]);
  if (v.size() == 2) return orient(v[0], v[1], x) != 0 || dot(x - v[0], x - v[1]) > 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (orient(v[i], v[(i + 1) % v.size()], x) < 0) return true;
  }
  return false;
}

bool strictly_inside(const ConvexChain& hull, const Point& x) {
  const auto& v = hull.vertices;
  if (!hull.full_dimensional()) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (orient(v[i], v[(i + 1) % v.size()], x) <= 0) return false;
  }
  return true;
}

std::vector<HalfPlane> outward_half_planes(const ConvexChain& hull) {
  std::vector<HalfPlane> planes;
  if (!hull.full_dimensional()) return planes;
  const auto& v = hull.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Vec d = v[(i + 1) % v.size()] - a;
    Vec n{d.y, -d.x};
    Rational offset = dot(n, Vec{a.x, a.y});
    planes.push_back({std::move(n), std::move(offset)});
  }
  return planes;
}

int compare_sqrt_expr(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  if (c < 0) throw Error("NegativeRadicand", "compare_sqrt_expr requires c >= 0");
  const Rational u = a - d;
  const int su = sign(u);
  const int sb = (c == 0) ? 0 : sign(b);
  if (sb == 0) return su;
  if (su == 0) return sb;
  if (su == sb) return su;
  // Opposite signs: the term with the larger square wins.
  const int cmp = sign(u * u - b * b * c);
  return su > 0 ? cmp : -cmp;
}

double QuadraticNumber::approx() const { return a.get_d() + b.get_d() * std::sqrt(d.get_d()); }

std::vector<QuadraticPoint> circle_intersections(const Circle& a, const Circle& b) {
  const Vec v = b.center() - a.center();
  const Rational dd = norm_sq(v);
  if (dd == 0) throw Error("Concentric", "concentric circles have no isolated intersections");
  // Foot of the radical line on the center line, then +- along the normal.
  const Rational t = (a.radius_sq() - b.radius_sq() + dd) / (2 * dd);
  const Rational h_sq = a.radius_sq() - t * t * dd;
  if (h_sq < 0) return {};
  const Point foot = a.center() + t * v;
  if (h_sq == 0) return {QuadraticPoint{foot.x, 0, foot.y, 0, 0}};
  const Rational d = h_sq / dd;
  // Normal direction perp(v) = (-v.y, v.x).
  return {
      QuadraticPoint{foot.x, -v.y, foot.y, v.x, d},
      QuadraticPoint{foot.x, v.y, foot.y, -v.x, d},
  };
}

int orient(const Point& p, const Point& q, const QuadraticPoint& x) {
  // cross(q - p, x - p) is affine in x.
  const Vec e = q - p;
  const Rational a = e.x * (x.ay - p.y) - e.y * (x.ax - p.x);
  const Rational b = e.x * x.by - e.y * x.bx;
  return compare_sqrt_expr(a, b, x.d, 0);
}

bool strictly_inside(const ConvexChain& hull, const QuadraticPoint& x) {
  const auto& v = hull.vertices;
  if (!hull.full_dimensional()) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (orient(v[i], v[(i + 1) % v.size()], x) <= 0) return false;
  }
  return true;
}

}  // namespace blockade
