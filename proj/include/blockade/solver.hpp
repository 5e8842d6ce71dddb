#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blockade/delaunay.hpp"

namespace blockade {

struct SolverConfig {
  bool exterior_only = false;
  int candidate_density = 4;
  int max_rounds = 200;
  std::uint64_t seed = 1;
  /// Drop blockers whose removal keeps the instance blocked.
  bool prune = true;
  /// Reject candidates collinear with two points already placed. A point on
  /// a chord kills an edge outright, so without this rule two points can be
  /// blocked by one.
  bool general_position = true;
  /// Polled once per round; returning true aborts with
  /// Error("TimeBudgetExceeded").
  std::function<bool()> should_stop;
};

struct SolveResult {
  PointSet Q;
  bool verified = false;
  std::size_t size = 0;
  /// Unblocked edge count at the start of every round.
  std::vector<std::size_t> unblocked_history;
  /// "blocked", "RoundsExhausted" or "Stalled".
  std::string status;
};

/// n points exactly on the unit circle, close to a regular n-gon (angles
/// 2 pi i / n, rational tangent half-angles), so all are cocircular.
PointSet regular_polygon(int n, long max_den = 1L << 20);

/// One point per hull edge, pushed outward from its midpoint by `offset`
/// (approximately, along a rational unit normal). Throws
/// Error("NotConvexPosition") unless every point is a hull vertex.
PointSet midpoint_heuristic(const PointSet& P, const Rational& offset);

/// Greedy candidate selection with exact verification each round. Never
/// throws on exhaustion; status reports it and verified stays false.
SolveResult greedy_cover_solve(const PointSet& P, const SolverConfig& cfg);

/// Candidate blocker positions for the current state (exact, deduplicated,
/// sorted). Exposed for the exhaustive search and for tests.
std::vector<Point> blocker_candidates(const PointSet& P, const std::vector<Point>& Q, const SolverConfig& cfg);

struct ProbeAttempt {
  std::string strategy;
  std::size_t size = 0;
  bool verified = false;
};

struct ProbeReport {
  std::size_t n = 0;
  std::optional<PointSet> best;
  std::size_t best_size = 0;
  /// "n-achieved" when a verified set of size |P| was found, otherwise
  /// "inconclusive-exceeds".
  std::string status;
  std::vector<ProbeAttempt> attempts;
};

ProbeReport conjecture_probe(const PointSet& P, int budget, bool exterior_only = false);

struct MinimalSearchResult {
  /// Smallest verified blocking set over the candidate positions.
  std::optional<PointSet> Q;
  std::size_t size = 0;
  std::size_t nodes = 0;
  /// Search stopped at the node cap before finishing the last size.
  bool truncated = false;
};

/// Depth-first search over candidate positions (minus dominated ones),
/// sizes increasing from `min_size` to `max_size`. Each placed point kills
/// the surviving edge with the fewest killers, or cuts it when nothing kills
/// it. Exhaustive only relative to that candidate set. Requires |P| <= 6.
MinimalSearchResult exhaustive_minimal(const PointSet& P, bool exterior_only, std::size_t min_size,
                                       std::size_t max_size, std::size_t node_cap = 2000000);

}  // namespace blockade
