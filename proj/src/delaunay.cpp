#include "blockade/delaunay.hpp"

#include <algorithm>
#include <mutex>

namespace blockade {

namespace {
std::mutex observer_mutex;
std::function<void(const BlockingInstance&)> observer;
}  // namespace

void set_blocking_observer(std::function<void(const BlockingInstance&)> fn) {
  std::lock_guard<std::mutex> lock(observer_mutex);
  observer = std::move(fn);
}

std::string PointSet::label(std::size_t i) const { return i < labels.size() ? labels[i] : std::string(); }

void PointSet::add(Point p, std::string label) {
  if (!label.empty() || !labels.empty()) {
    labels.resize(points.size());
    labels.push_back(std::move(label));
  }
  points.push_back(std::move(p));
}

void require_distinct(const std::vector<Point>& points) {
  std::vector<Point> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw Error("IdenticalPoints", "duplicate point (" + to_string(dup->x) + ", " + to_string(dup->y) + ")");
  }
}

bool WitnessInterval::empty() const {
  if (chord_blocked) return true;
  if (!lo || !hi) return false;
  return *lo > *hi;
}

Circle pencil_circle(const Point& p, const Point& q, const Rational& c) {
  const Point center = midpoint(p, q) + c * perp(q - p);
  return Circle(center, dist_sq(center, p));
}

Circle WitnessInterval::circle_at(const Point& p, const Point& q, const Rational& c) const {
  return pencil_circle(p, q, c);
}

Exclusion exclusion(const Point& p, const Point& q, const Point& s) {
  // s is strictly inside circle(c) iff K - 2 c O < 0 with
  // O = cross(q - p, s - p) and K = |s - m|^2 - |p - m|^2.
  const Point m = midpoint(p, q);
  const Rational o = orient_value(p, q, s);
  const Rational k = dist_sq(s, m) - dist_sq(p, m);
  Exclusion ex;
  if (o == 0) {
    ex.all = k < 0;
    return ex;
  }
  ex.side = sign(o);
  ex.threshold = k / (2 * o);
  return ex;
}

WitnessInterval witness_interval(const std::vector<Point>& points, std::size_t i, std::size_t j) {
  if (i == j || i >= points.size() || j >= points.size()) {
    throw Error("BadEdge", "edge endpoints must be two distinct indices");
  }
  const Point& p = points[i];
  const Point& q = points[j];
  if (p == q) throw Error("IdenticalPoints", "edge endpoints coincide");

  WitnessInterval w;
  w.edge = {i, j};
  for (std::size_t s = 0; s < points.size(); ++s) {
    if (s == i || s == j) continue;
    if (points[s] == p || points[s] == q) throw Error("IdenticalPoints", "third point coincides with an endpoint");
    const Exclusion ex = exclusion(p, q, points[s]);
    if (ex.all) {
      w.chord_blocked = true;
    } else if (ex.side > 0) {
      if (!w.hi || ex.threshold < *w.hi) w.hi = ex.threshold;
    } else if (ex.side < 0) {
      if (!w.lo || ex.threshold > *w.lo) w.lo = ex.threshold;
    }
  }
  w.lo_closed = w.lo.has_value();
  w.hi_closed = w.hi.has_value();
  return w;
}

WitnessInterval witness_interval(const PointSet& set, std::size_t i, std::size_t j) {
  return witness_interval(set.points, i, j);
}

std::vector<Edge> delaunay_edges(const PointSet& set) {
  if (set.size() < 2) throw Error("TooFewPoints", "need at least two points");
  require_distinct(set.points);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (!witness_interval(set.points, i, j).empty()) edges.emplace_back(i, j);
    }
  }
  return edges;
}

std::vector<Point> BlockingInstance::combined() const {
  std::vector<Point> all = P.points;
  all.insert(all.end(), Q.points.begin(), Q.points.end());
  return all;
}

bool is_blocked_edge(const BlockingInstance& inst, std::size_t i, std::size_t j) {
  if (i >= inst.P.size() || j >= inst.P.size()) throw Error("BadEdge", "edge must index points of P");
  return witness_interval(inst.combined(), i, j).empty();
}

std::string to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::kBlocked:
      return "blocked";
    case Verdict::Kind::kUnblocked:
      return "unblocked";
    case Verdict::Kind::kExteriorViolation:
      return "exterior_violation";
  }
  return "unknown";
}

Verdict blocks(const BlockingInstance& inst) {
  const std::vector<Point> all = inst.combined();
  require_distinct(all);

  Verdict verdict;
  if (inst.exterior_only && inst.P.size() >= 1) {
    const ConvexChain hull = convex_hull(inst.P.points);
    for (std::size_t k = 0; k < inst.Q.size(); ++k) {
      if (strictly_inside(hull, inst.Q.points[k])) verdict.violations.push_back(k);
    }
    if (!verdict.violations.empty()) {
      verdict.kind = Verdict::Kind::kExteriorViolation;
      return verdict;
    }
  }
  if (inst.P.size() < 2) return verdict;

  // Adding points never creates P-P edges, so only Delaunay edges of P
  // need checking.
  for (const Edge& e : delaunay_edges(inst.P)) {
    if (!witness_interval(all, e.first, e.second).empty()) verdict.unblocked.push_back(e);
  }
  if (!verdict.unblocked.empty()) {
    verdict.kind = Verdict::Kind::kUnblocked;
    return verdict;
  }
  std::function<void(const BlockingInstance&)> fn;
  {
    std::lock_guard<std::mutex> lock(observer_mutex);
    fn = observer;
  }
  if (fn) fn(inst);
  return verdict;
}

}  // namespace blockade
