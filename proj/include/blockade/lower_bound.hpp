#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockade/constructions.hpp"
#include "blockade/delaunay.hpp"
#include "blockade/geometry.hpp"

namespace blockade {

/// Open region interior(circle) minus the closed hull. A blocker placed on
/// the hull boundary inside the disk is dominated by nearby strictly
/// exterior points, so restricting to the open exterior loses nothing.
struct BlockingArea {
  Circle circle;
  ConvexChain hull;
};

/// Minimum over the closed half-plane (or the whole plane) of
/// max_i (|x - c_i|^2 - r_i^2), with a point attaining it. All candidates of
/// this minimax are rational because the power functions share their
/// quadratic part.
struct PowerMinimax {
  Rational value;
  Point argmin;
};

PowerMinimax power_minimax(const std::vector<Circle>& disks, const std::optional<HalfPlane>& half_plane);

/// Rational point strictly inside every disk and strictly beyond the
/// half-plane's line, if one exists.
std::optional<Point> region_sample(const std::vector<Circle>& disks, const std::optional<HalfPlane>& half_plane);

/// Rational point of the common blocking area of all circles, if nonempty.
std::optional<Point> common_blocking_point(const std::vector<Circle>& circles, const ConvexChain& hull);

bool area_nonempty(const BlockingArea& area);
bool areas_disjoint(const BlockingArea& a, const BlockingArea& b);

/// One cell of the local circle arrangement: a rational sample strictly
/// outside the hull and the set of certificate circles containing it.
struct Cell {
  Point sample;
  std::vector<std::size_t> circles;
};

struct CellHypergraph {
  std::vector<Cell> cells;
  std::vector<std::vector<std::size_t>> circle_to_cells;
};

/// Pairs of circles whose blocking areas overlap.
struct OverlapGraph {
  std::size_t nodes = 0;
  std::vector<bool> hittable;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<bool>> adjacent;

  /// Connected components over hittable circles, in increasing order.
  std::vector<std::vector<std::size_t>> components() const;
};

OverlapGraph overlap_graph(const std::vector<Circle>& circles, const ConvexChain& hull);

struct LowerBoundOptions {
  /// Maximum number of maximal cells per group before falling back.
  std::size_t cell_cap = 20000;
};

struct GroupBound {
  std::vector<std::size_t> circles;
  std::size_t disjoint = 0;
  std::size_t hitting = 0;
  std::size_t cells = 0;
  bool overflow = false;
};

enum class BoundMethod { kDisjointness, kHittingSet };
std::string to_string(BoundMethod method);

struct Certificate {
  PointSet P;
  CircleFamily circles;
  std::size_t bound = 0;
  BoundMethod method = BoundMethod::kDisjointness;
  /// Circles whose blocking area is empty; their edges cannot be blocked
  /// from the exterior at all.
  std::vector<std::size_t> unhittable;
  /// Circles of a maximum pairwise-disjoint subfamily.
  std::vector<std::size_t> witness_family;
  OverlapGraph overlaps;
  std::vector<GroupBound> groups;
  CellHypergraph cells;
  bool overflow = false;
};

/// Maximum subfamily with pairwise-disjoint nonempty blocking areas.
Certificate disjointness_bound(const PointSet& P, const CircleFamily& circles);

/// Exact minimum hitting set over the maximal cells of each overlap group.
/// Falls back to the disjointness count for a group whose cell count exceeds
/// the cap (reported through `overflow`).
Certificate hitting_set_bound(const PointSet& P, const CircleFamily& circles, const LowerBoundOptions& options = {});

/// Recomputes every cell sample's signature from scratch; returns the
/// indices of cells whose stored signature disagrees or whose sample is not
/// strictly outside the hull.
std::vector<std::size_t> audit_cells(const Certificate& cert);

/// Exact maximum independent set size on a small graph (branch and bound).
std::size_t max_independent_set(const std::vector<std::size_t>& nodes, const std::vector<std::vector<bool>>& adjacent,
                                std::vector<std::size_t>* chosen = nullptr);

/// Exact minimum set cover of `universe` by `sets` (branch and bound,
/// deterministic branching order).
std::size_t min_set_cover(const std::vector<std::size_t>& universe, const std::vector<std::vector<std::size_t>>& sets,
                          std::vector<std::size_t>* chosen = nullptr);

}  // namespace blockade
