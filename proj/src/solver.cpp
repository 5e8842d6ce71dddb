#include "blockade/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace blockade {

namespace {

constexpr long kSnapDen = 1L << 24;

struct DPoint {
  double x = 0, y = 0;
};

DPoint to_dpoint(const Point& p) { return {to_double(p.x), to_double(p.y)}; }

// Disk of an interval endpoint with one side of the chord.
struct KillCap {
  DPoint center;
  double radius = 0;
  DPoint chord_mid;
  DPoint normal;  // unit, pointing into the cap side
  DPoint along;   // unit chord direction
  DPoint p, q;
};

struct EdgeState {
  Edge edge;
  WitnessInterval interval;
};

std::vector<EdgeState> surviving_edges(const std::vector<Edge>& edges, const std::vector<Point>& all) {
  std::vector<EdgeState> out;
  for (const Edge& e : edges) {
    WitnessInterval w = witness_interval(all, e.first, e.second);
    if (!w.empty()) out.push_back({e, std::move(w)});
  }
  return out;
}

// Effect of adding x on one interval: 2 = killed, 1 = cut, 0 = untouched,
// with a heuristic measure of the cut in `partial`.
int apply_candidate(const Point& p, const Point& q, const WitnessInterval& w, const Point& x, double& partial) {
  const Exclusion ex = exclusion(p, q, x);
  if (ex.all) return 2;
  if (ex.side > 0) {
    if (w.lo && ex.threshold < *w.lo) return 2;
    if (w.hi && ex.threshold >= *w.hi) return 0;
    if (!w.hi) {
      partial += 1.0;
    } else if (w.lo) {
      partial += to_double((*w.hi - ex.threshold) / (*w.hi - *w.lo));
    } else {
      partial += 0.5;
    }
    return 1;
  }
  if (ex.side < 0) {
    if (w.hi && ex.threshold > *w.hi) return 2;
    if (w.lo && ex.threshold <= *w.lo) return 0;
    if (!w.lo) {
      partial += 1.0;
    } else if (w.hi) {
      partial += to_double((ex.threshold - *w.lo) / (*w.hi - *w.lo));
    } else {
      partial += 0.5;
    }
    return 1;
  }
  return 0;
}

struct Score {
  std::size_t killed = 0;
  double partial = 0;
};

Score score_candidate(const std::vector<Point>& all, const std::vector<EdgeState>& states, const Point& x) {
  Score s;
  for (const EdgeState& es : states) {
    const int effect = apply_candidate(all[es.edge.first], all[es.edge.second], es.interval, x, s.partial);
    if (effect == 2) ++s.killed;
  }
  return s;
}

std::vector<KillCap> kill_caps(const std::vector<Point>& all, const std::vector<EdgeState>& states) {
  std::vector<KillCap> caps;
  for (const EdgeState& es : states) {
    const DPoint p = to_dpoint(all[es.edge.first]);
    const DPoint q = to_dpoint(all[es.edge.second]);
    const double dx = q.x - p.x, dy = q.y - p.y;
    const double len = std::hypot(dx, dy);
    const DPoint mid{(p.x + q.x) / 2, (p.y + q.y) / 2};
    const DPoint left{-dy / len, dx / len};
    const DPoint along{dx / len, dy / len};
    auto cap = [&](double c, double side) {
      KillCap k;
      k.center = {mid.x - c * dy, mid.y + c * dx};
      k.radius = std::hypot(k.center.x - p.x, k.center.y - p.y);
      k.chord_mid = mid;
      k.normal = {side * left.x, side * left.y};
      k.along = along;
      k.p = p;
      k.q = q;
      return k;
    };
    // Half-planes stand in for missing ends: a large circle on that side.
    const double far = 64.0;
    const double lo = es.interval.lo ? to_double(*es.interval.lo) : -far;
    const double hi = es.interval.hi ? to_double(*es.interval.hi) : far;
    caps.push_back(cap(lo, +1));
    caps.push_back(cap(hi, -1));
    // The opposite caps only cut the interval, but two cuts can kill an edge
    // whose kill caps lie inside the hull.
    caps.push_back(cap(hi, +1));
    caps.push_back(cap(lo, -1));
  }
  return caps;
}

void cap_samples(const KillCap& k, int density, std::vector<DPoint>& out) {
  // Sagitta of the cap beyond the chord.
  const double offset = (k.center.x - k.chord_mid.x) * k.normal.x + (k.center.y - k.chord_mid.y) * k.normal.y;
  const double sagitta = offset + k.radius;
  if (!(sagitta > 0)) return;
  for (double a : {1.0 / 64, 1.0 / 8, 1.0 / 2, 7.0 / 8}) {
    const double depth = a * sagitta;
    const double from_center = depth - offset;
    const double half = std::sqrt(std::max(0.0, k.radius * k.radius - from_center * from_center));
    const DPoint base{k.chord_mid.x + depth * k.normal.x, k.chord_mid.y + depth * k.normal.y};
    out.push_back(base);
    for (int j = 1; j <= density; ++j) {
      const double u = 0.95 * (2.0 * j / (density + 1) - 1.0);
      out.push_back({base.x + u * half * k.along.x, base.y + u * half * k.along.y});
    }
  }
  // Along the arc, dense near both chord endpoints where the cap meets the
  // hull boundary.
  const double ap = std::atan2(k.p.y - k.center.y, k.p.x - k.center.x);
  const double aq = std::atan2(k.q.y - k.center.y, k.q.x - k.center.x);
  const double apex = std::atan2(k.normal.y, k.normal.x);
  auto span_to = [&](double from) {
    double d = apex - from;
    while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
    while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
    return d;
  };
  std::vector<double> fractions{1.0 / 512, 1.0 / 64, 1.0 / 16};
  for (int j = 1; j <= density; ++j) fractions.push_back(static_cast<double>(j) / (density + 1));
  for (double from : {ap, aq}) {
    const double span = span_to(from);
    for (double f : fractions) {
      const double ang = from + f * span;
      for (double rho : {0.999, 0.98, 0.8}) {
        out.push_back({k.center.x + rho * k.radius * std::cos(ang), k.center.y + rho * k.radius * std::sin(ang)});
      }
    }
  }
}

void lens_samples(const KillCap& a, const KillCap& b, std::vector<DPoint>& out) {
  const double dx = b.center.x - a.center.x, dy = b.center.y - a.center.y;
  const double d = std::hypot(dx, dy);
  if (d == 0 || d >= a.radius + b.radius) return;
  if (d <= std::abs(a.radius - b.radius)) {
    const KillCap& small = a.radius < b.radius ? a : b;
    out.push_back(small.center);
    return;
  }
  const double t = (d * d + a.radius * a.radius - b.radius * b.radius) / (2 * d);
  const double h = std::sqrt(std::max(0.0, a.radius * a.radius - t * t));
  const DPoint foot{a.center.x + t * dx / d, a.center.y + t * dy / d};
  const DPoint n{-dy / d, dx / d};
  // Lens center, and both corners pulled toward it.
  const double inner_a = a.radius - t, inner_b = b.radius - (d - t);
  const DPoint lens_mid{foot.x + (inner_a - inner_b) / 2 * dx / d, foot.y + (inner_a - inner_b) / 2 * dy / d};
  out.push_back(lens_mid);
  for (double s : {1.0, -1.0}) {
    const DPoint corner{foot.x + s * h * n.x, foot.y + s * h * n.y};
    for (double f : {0.05, 0.3}) {
      out.push_back({corner.x + f * (lens_mid.x - corner.x), corner.y + f * (lens_mid.y - corner.y)});
    }
  }
}

bool creates_collinear(const std::vector<Point>& all, const Point& x) {
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      if (orient(all[a], all[b], x) == 0) return true;
    }
  }
  return false;
}

Point snap(const DPoint& d) { return {snap_to_rational(d.x, kSnapDen), snap_to_rational(d.y, kSnapDen)}; }

std::vector<Point> generate_candidates(const PointSet& P, const std::vector<Point>& all,
                                       const std::vector<EdgeState>& states, const SolverConfig& cfg,
                                       std::uint64_t round) {
  const ConvexChain hull = convex_hull(P.points);
  std::vector<DPoint> raw;
  const auto caps = kill_caps(all, states);
  const int density = std::max(1, cfg.candidate_density);
  for (const KillCap& k : caps) cap_samples(k, density, raw);
  for (std::size_t i = 0; i < caps.size(); ++i) {
    for (std::size_t j = i + 1; j < caps.size(); ++j) lens_samples(caps[i], caps[j], raw);
  }

  std::mt19937_64 rng(cfg.seed * 0x9E3779B97F4A7C15ULL + round);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (const KillCap& k : caps) {
    for (int s = 0; s < density; ++s) {
      const DPoint x{k.center.x + k.radius * unit(rng), k.center.y + k.radius * unit(rng)};
      raw.push_back(x);
    }
  }

  std::set<Point> exact;
  // Chord midpoints kill an edge outright.
  if (!cfg.general_position) {
    for (const EdgeState& es : states) exact.insert(midpoint(all[es.edge.first], all[es.edge.second]));
  }
  // Outward hull-edge midpoints at a few relative offsets.
  if (hull.vertices.size() >= 2) {
    const std::size_t h = hull.vertices.size();
    for (std::size_t i = 0; i < h; ++i) {
      const Point& a = hull.vertices[i];
      const Point& b = hull.vertices[(i + 1) % h];
      const Vec d = b - a;
      const Vec out{d.y, -d.x};
      for (const Rational& s : {Rational(1, 1000), Rational(1, 100), Rational(1, 20)}) exact.insert(midpoint(a, b) + s * out);
    }
  }
  for (const DPoint& d : raw) {
    if (std::isfinite(d.x) && std::isfinite(d.y)) exact.insert(snap(d));
  }

  std::set<Point> taken(all.begin(), all.end());
  std::vector<Point> out;
  for (const Point& x : exact) {
    if (taken.count(x)) continue;
    if (cfg.exterior_only && strictly_inside(hull, x)) continue;
    if (cfg.general_position && creates_collinear(all, x)) continue;
    out.push_back(x);
  }
  return out;
}

bool is_blocked(const PointSet& P, const std::vector<Point>& Q, bool exterior_only) {
  BlockingInstance inst;
  inst.P = P;
  inst.Q.points = Q;
  inst.exterior_only = exterior_only;
  return blocks(inst).blocked();
}

PointSet label_blockers(const std::vector<Point>& Q) {
  PointSet out;
  for (std::size_t i = 0; i < Q.size(); ++i) out.add(Q[i], "q_" + std::to_string(i + 1));
  return out;
}

}  // namespace

PointSet regular_polygon(int n, long max_den) {
  if (n < 3) throw Error("InvalidN", "a polygon needs at least 3 vertices");
  PointSet out;
  for (int i = 0; i < n; ++i) {
    Point p;
    if (2 * i == n) {
      p = {-1, 0};
    } else {
      const double half = std::numbers::pi * i / n;
      const Rational t = snap_to_rational(std::tan(half), max_den);
      const Rational den = 1 + t * t;
      p = {(1 - t * t) / den, 2 * t / den};
    }
    out.add(p, "v_" + std::to_string(i));
  }
  return out;
}

PointSet midpoint_heuristic(const PointSet& P, const Rational& offset) {
  if (P.size() < 2) throw Error("TooFewPoints", "need at least two points");
  if (offset <= 0) throw Error("InvalidOffset", "offset must be positive");
  require_distinct(P.points);
  const ConvexChain hull = convex_hull(P.points);
  if (hull.vertices.size() != P.size() || hull.boundary_points != 0) {
    throw Error("NotConvexPosition", std::to_string(P.size() - hull.vertices.size()) + " points are not hull vertices");
  }
  PointSet Q;
  const std::size_t h = hull.vertices.size();
  for (std::size_t i = 0; i < h; ++i) {
    const Point& a = hull.vertices[i];
    const Point& b = hull.vertices[(i + 1) % h];
    const Vec d = b - a;
    const Vec out{d.y, -d.x};
    const Rational len = snap_to_rational(std::sqrt(to_double(norm_sq(d))), 1L << 20);
    Q.add(midpoint(a, b) + (offset / len) * out, "q_" + std::to_string(i + 1));
  }
  return Q;
}

std::vector<Point> blocker_candidates(const PointSet& P, const std::vector<Point>& Q, const SolverConfig& cfg) {
  std::vector<Point> all = P.points;
  all.insert(all.end(), Q.begin(), Q.end());
  require_distinct(all);
  const auto states = surviving_edges(delaunay_edges(P), all);
  return generate_candidates(P, all, states, cfg, 0);
}

SolveResult greedy_cover_solve(const PointSet& P, const SolverConfig& cfg) {
  if (P.size() < 2) throw Error("TooFewPoints", "need at least two points");
  if (cfg.candidate_density < 1) throw Error("InvalidConfig", "candidate_density must be >= 1");
  const std::vector<Edge> edges = delaunay_edges(P);

  SolveResult result;
  std::vector<Point> Q;
  result.status = "RoundsExhausted";
  for (int round = 0; round < cfg.max_rounds; ++round) {
    if (cfg.should_stop && cfg.should_stop()) {
      throw Error("TimeBudgetExceeded", "solver stopped after " + std::to_string(round) + " rounds");
    }
    std::vector<Point> all = P.points;
    all.insert(all.end(), Q.begin(), Q.end());
    const auto states = surviving_edges(edges, all);
    result.unblocked_history.push_back(states.size());
    if (states.empty()) {
      result.status = "blocked";
      break;
    }
    const auto candidates = generate_candidates(P, all, states, cfg, static_cast<std::uint64_t>(round));
    std::optional<std::size_t> best;
    Score best_score;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const Score s = score_candidate(all, states, candidates[c]);
      // Candidates are sorted by (x, y), so strict improvement keeps the
      // lexicographically smallest among ties.
      if (!best || s.killed > best_score.killed ||
          (s.killed == best_score.killed && s.partial > best_score.partial + 1e-12)) {
        best = c;
        best_score = s;
      }
    }
    if (!best || (best_score.killed == 0 && best_score.partial <= 0)) {
      result.status = "Stalled";
      break;
    }
    Q.push_back(candidates[*best]);
  }
  if (result.status == "RoundsExhausted") {
    std::vector<Point> all = P.points;
    all.insert(all.end(), Q.begin(), Q.end());
    if (surviving_edges(edges, all).empty()) result.status = "blocked";
  }

  if (result.status == "blocked" && cfg.prune) {
    for (std::size_t i = 0; i < Q.size();) {
      std::vector<Point> trial = Q;
      trial.erase(trial.begin() + static_cast<long>(i));
      if (is_blocked(P, trial, cfg.exterior_only)) {
        Q = std::move(trial);
      } else {
        ++i;
      }
    }
  }

  result.Q = label_blockers(Q);
  result.size = Q.size();
  result.verified = is_blocked(P, Q, cfg.exterior_only);
  return result;
}

ProbeReport conjecture_probe(const PointSet& P, int budget, bool exterior_only) {
  ProbeReport report;
  report.n = P.size();
  auto consider = [&](const std::string& strategy, const PointSet& Q, bool verified) {
    report.attempts.push_back({strategy, Q.size(), verified});
    if (verified && (!report.best || Q.size() < report.best_size)) {
      report.best = Q;
      report.best_size = Q.size();
    }
  };

  for (const Rational& offset : {Rational(1, 100), Rational(1, 1000)}) {
    try {
      const PointSet Q = midpoint_heuristic(P, offset);
      const bool ok = is_blocked(P, Q.points, exterior_only);
      consider("midpoint offset " + to_string(offset), Q, ok);
    } catch (const Error&) {
      report.attempts.push_back({"midpoint offset " + to_string(offset), 0, false});
    }
    if (report.best && report.best_size <= report.n) break;
  }

  int density = 2;
  for (int attempt = 0; attempt < budget && !(report.best && report.best_size <= report.n); ++attempt) {
    SolverConfig cfg;
    cfg.exterior_only = exterior_only;
    cfg.candidate_density = density;
    cfg.seed = static_cast<std::uint64_t>(attempt + 1);
    const SolveResult r = greedy_cover_solve(P, cfg);
    consider("greedy density " + std::to_string(density) + " seed " + std::to_string(cfg.seed), r.Q, r.verified);
    density *= 2;
  }
  report.status = report.best && report.best_size <= report.n ? "n-achieved" : "inconclusive-exceeds";
  return report;
}

namespace {

struct LiveInterval {
  std::optional<Rational> lo, hi;
  bool dead = false;
};

void exclude(LiveInterval& iv, const Exclusion& ex) {
  if (iv.dead) return;
  if (ex.all) {
    iv.dead = true;
    return;
  }
  if (ex.side > 0 && (!iv.hi || ex.threshold < *iv.hi)) iv.hi = ex.threshold;
  if (ex.side < 0 && (!iv.lo || ex.threshold > *iv.lo)) iv.lo = ex.threshold;
  if (iv.lo && iv.hi && *iv.lo > *iv.hi) iv.dead = true;
}

// 2 = kills, 1 = cuts, 0 = no effect.
int effect_on(const LiveInterval& iv, const Exclusion& ex) {
  if (ex.all) return 2;
  if (ex.side > 0) {
    if (iv.lo && ex.threshold < *iv.lo) return 2;
    return !iv.hi || ex.threshold < *iv.hi ? 1 : 0;
  }
  if (ex.side < 0) {
    if (iv.hi && ex.threshold > *iv.hi) return 2;
    return !iv.lo || ex.threshold > *iv.lo ? 1 : 0;
  }
  return 0;
}

}  // namespace

MinimalSearchResult exhaustive_minimal(const PointSet& P, bool exterior_only, std::size_t min_size,
                                       std::size_t max_size, std::size_t node_cap) {
  if (P.size() > 6) throw Error("TooLarge", "exhaustive search supports at most 6 points");
  if (P.size() < 2) throw Error("TooFewPoints", "need at least two points");
  const std::vector<Edge> edges = delaunay_edges(P);
  SolverConfig cfg;
  cfg.exterior_only = exterior_only;
  cfg.candidate_density = 2;
  const auto initial = surviving_edges(edges, P.points);
  const std::vector<Point> raw = generate_candidates(P, P.points, initial, cfg, 0);

  // Exclusion of every candidate on every edge, computed once.
  std::vector<std::vector<Exclusion>> raw_table(raw.size());
  for (std::size_t c = 0; c < raw.size(); ++c) {
    for (const Edge& e : edges) raw_table[c].push_back(exclusion(P.points[e.first], P.points[e.second], raw[c]));
  }
  // Drop candidates whose every exclusion ray is contained in another's.
  auto covers = [](const Exclusion& a, const Exclusion& b) {
    if (a.all) return true;
    if (b.all) return false;
    if (b.side == 0) return true;
    if (a.side != b.side) return false;
    return a.side > 0 ? a.threshold <= b.threshold : a.threshold >= b.threshold;
  };
  std::vector<Point> candidates;
  std::vector<std::vector<Exclusion>> table;
  for (std::size_t b = 0; b < raw.size(); ++b) {
    bool dominated = false;
    for (std::size_t a = 0; a < raw.size() && !dominated; ++a) {
      if (a == b) continue;
      bool all_cover = true, strict = false;
      for (std::size_t e = 0; e < edges.size() && all_cover; ++e) {
        all_cover = covers(raw_table[a][e], raw_table[b][e]);
        if (all_cover && !covers(raw_table[b][e], raw_table[a][e])) strict = true;
      }
      dominated = all_cover && (strict || a < b);
    }
    if (!dominated) {
      candidates.push_back(raw[b]);
      table.push_back(raw_table[b]);
    }
  }

  MinimalSearchResult result;
  std::vector<std::size_t> chosen;
  auto valid = [&](std::size_t c) {
    const Point& x = candidates[c];
    for (std::size_t s : chosen) {
      if (s == c) return false;
      const Point& y = candidates[s];
      for (const Point& a : P.points) {
        if (orient(a, y, x) == 0) return false;
      }
      for (std::size_t t : chosen) {
        if (t != s && orient(candidates[t], y, x) == 0) return false;
      }
    }
    return true;
  };

  std::function<bool(std::size_t, const std::vector<LiveInterval>&)> dfs =
      [&](std::size_t budget, const std::vector<LiveInterval>& live) -> bool {
    if (++result.nodes > node_cap) {
      result.truncated = true;
      return false;
    }
    // Surviving edge with the fewest killers.
    std::optional<std::size_t> target;
    std::vector<std::size_t> best_killers, best_cutters;
    std::vector<std::vector<bool>> affecting;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (live[e].dead) continue;
      if (budget == 0) return false;
      std::vector<std::size_t> killers, cutters;
      std::vector<bool> affects(candidates.size(), false);
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const int eff = effect_on(live[e], table[c][e]);
        if (eff == 2) killers.push_back(c);
        if (eff == 1) cutters.push_back(c);
        affects[c] = eff != 0;
      }
      if (killers.empty() && (cutters.empty() || budget < 2)) return false;
      affecting.push_back(std::move(affects));
      if (!target || (best_killers.empty() && !killers.empty()) ||
          (!killers.empty() && killers.size() < best_killers.size())) {
        target = e;
        best_killers = std::move(killers);
        best_cutters = std::move(cutters);
      }
    }
    if (!target) return true;
    // Surviving edges no single candidate touches together each need their
    // own point.
    {
      std::vector<bool> used(candidates.size(), false);
      std::size_t packing = 0;
      for (const auto& affects : affecting) {
        bool disjoint = true;
        for (std::size_t c = 0; c < candidates.size() && disjoint; ++c) disjoint = !(affects[c] && used[c]);
        if (!disjoint) continue;
        ++packing;
        for (std::size_t c = 0; c < candidates.size(); ++c) used[c] = used[c] || affects[c];
      }
      if (packing > budget) return false;
    }
    if (best_killers.empty()) best_killers = std::move(best_cutters);
    for (std::size_t c : best_killers) {
      if (!valid(c)) continue;
      std::vector<LiveInterval> next = live;
      for (std::size_t e = 0; e < edges.size(); ++e) exclude(next[e], table[c][e]);
      chosen.push_back(c);
      if (dfs(budget - 1, next)) return true;
      chosen.pop_back();
      if (result.truncated) return false;
    }
    return false;
  };

  std::vector<LiveInterval> start(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    start[e].lo = initial[e].interval.lo;
    start[e].hi = initial[e].interval.hi;
  }
  for (std::size_t size = std::max<std::size_t>(min_size, 1); size <= max_size; ++size) {
    chosen.clear();
    if (dfs(size, start)) {
      std::vector<Point> Q;
      for (std::size_t c : chosen) Q.push_back(candidates[c]);
      if (!is_blocked(P, Q, exterior_only)) throw Error("InternalError", "exhaustive search produced an unverified set");
      result.Q = label_blockers(Q);
      result.size = Q.size();
      return result;
    }
    if (result.truncated) break;
  }
  return result;
}

}  // namespace blockade
