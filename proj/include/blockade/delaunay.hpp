#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockade/geometry.hpp"

namespace blockade {

struct PointSet {
  std::vector<Point> points;
  /// Either empty or one tag per point.
  std::vector<std::string> labels;

  std::size_t size() const { return points.size(); }
  std::string label(std::size_t i) const;
  void add(Point p, std::string label = {});
};

/// Throws Error("IdenticalPoints") if two points coincide.
void require_distinct(const std::vector<Point>& points);

using Edge = std::pair<std::size_t, std::size_t>;

/// Circles through the endpoints of edge (i, j) are centered at
/// midpoint + c * perp(p_j - p_i). The interval holds the parameters c whose
/// circle has an empty open interior; a missing bound is infinite.
struct WitnessInterval {
  Edge edge;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool lo_closed = false;
  bool hi_closed = false;
  /// Set when a third point sits strictly inside segment ij.
  bool chord_blocked = false;

  bool empty() const;
  Circle circle_at(const Point& p, const Point& q, const Rational& c) const;
};

/// What a single third point s does to the bisector parameter line of (p, q):
/// it excludes the open ray (threshold, +inf) when side > 0,
/// (-inf, threshold) when side < 0, everything when `all` is set, and
/// nothing when side == 0 and !all.
struct Exclusion {
  int side = 0;
  Rational threshold;
  bool all = false;
};

Exclusion exclusion(const Point& p, const Point& q, const Point& s);

/// Parameter of the circle through p and q centered at midpoint + c*perp(q-p)
/// as a circle object.
Circle pencil_circle(const Point& p, const Point& q, const Rational& c);

WitnessInterval witness_interval(const std::vector<Point>& points, std::size_t i, std::size_t j);
WitnessInterval witness_interval(const PointSet& set, std::size_t i, std::size_t j);

/// Delaunay graph: union of the edges of all Delaunay triangulations.
std::vector<Edge> delaunay_edges(const PointSet& set);

struct BlockingInstance {
  PointSet P;
  PointSet Q;
  bool exterior_only = false;

  /// P followed by Q.
  std::vector<Point> combined() const;
};

bool is_blocked_edge(const BlockingInstance& inst, std::size_t i, std::size_t j);

struct Verdict {
  enum class Kind { kBlocked, kUnblocked, kExteriorViolation };

  Kind kind = Kind::kBlocked;
  std::vector<Edge> unblocked;
  /// Indices into Q of blockers strictly inside conv(P).
  std::vector<std::size_t> violations;

  bool blocked() const { return kind == Kind::kBlocked; }
};

std::string to_string(Verdict::Kind kind);

Verdict blocks(const BlockingInstance& inst);

/// Hook called by blocks() with every instance it finds blocked; the test
/// suite uses it to enforce the n-point necessity bound globally.
void set_blocking_observer(std::function<void(const BlockingInstance&)> observer);

}  // namespace blockade
