#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "blockade/delaunay.hpp"
#include "test_util.hpp"

namespace blockade::testing {

/// Sign of the incircle determinant, positive when d is strictly inside the
/// circumcircle of the counterclockwise triangle (a, b, c).
inline int incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Rational adx = a.x - d.x, ady = a.y - d.y;
  const Rational bdx = b.x - d.x, bdy = b.y - d.y;
  const Rational cdx = c.x - d.x, cdy = c.y - d.y;
  const Rational det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) -
                       (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
                       (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
  return sgn(det) > 0 ? 1 : (sgn(det) < 0 ? -1 : 0);
}

/// Union of the edges of all triangles with an empty open circumcircle;
/// consecutive pairs when every point is on one line.
inline std::set<Edge> oracle_edges(const std::vector<Point>& pts) {
  std::set<Edge> edges;
  const std::size_t n = pts.size();
  bool any_triangle = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const Rational o = (pts[j].x - pts[i].x) * (pts[k].y - pts[i].y) - (pts[j].y - pts[i].y) * (pts[k].x - pts[i].x);
        if (o == 0) continue;
        any_triangle = true;
        const Point& a = pts[i];
        const Point& b = o > 0 ? pts[j] : pts[k];
        const Point& c = o > 0 ? pts[k] : pts[j];
        bool empty = true;
        for (std::size_t m = 0; m < n && empty; ++m) {
          if (m != i && m != j && m != k && incircle(a, b, c, pts[m]) > 0) empty = false;
        }
        if (empty) edges.insert({i, j}), edges.insert({i, k}), edges.insert({j, k});
      }
    }
  }
  if (!any_triangle && n >= 2) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pts[a] < pts[b]; });
    for (std::size_t i = 0; i + 1 < n; ++i) edges.insert({std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1])});
  }
  return edges;
}

inline std::set<Edge> normalized(const std::vector<Edge>& edges) {
  std::set<Edge> out;
  for (auto [a, b] : edges) out.insert({std::min(a, b), std::max(a, b)});
  return out;
}

/// Random distinct point sets of 2..12 points; every third set is forced
/// cocircular-rich, every fifth collinear-rich.
inline std::vector<Point> random_test_set(std::mt19937_64& rng, int index) {
  static const std::vector<Point> circle_pts = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}, {frac(3, 5), frac(4, 5)}, {frac(-3, 5), frac(4, 5)},
      {frac(3, 5), frac(-4, 5)}, {frac(-4, 5), frac(-3, 5)}, {frac(5, 13), frac(12, 13)}, {frac(-12, 13), frac(5, 13)},
      {frac(8, 17), frac(-15, 17)}, {frac(15, 17), frac(8, 17)}};
  const std::size_t n = 2 + rng() % 11;
  std::vector<Point> pts;
  auto push = [&](const Point& p) {
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  };
  if (index % 3 == 0) {
    const std::size_t on = std::min<std::size_t>(n, 4 + rng() % 5);
    while (pts.size() < on) push(circle_pts[rng() % circle_pts.size()]);
  } else if (index % 5 == 0) {
    const Point a = random_point(rng, 2);
    Vec d{frac(static_cast<long>(rng() % 5) - 2, 2), frac(static_cast<long>(rng() % 5) - 2, 2)};
    if (d.x == 0 && d.y == 0) d.x = 1;
    const std::size_t on = std::min<std::size_t>(n, 3 + rng() % 4);
    for (long t = 0; pts.size() < on; ++t) push(a + Rational(t) * d);
  }
  while (pts.size() < n) push(random_point(rng, 3));
  return pts;
}

}  // namespace blockade::testing
