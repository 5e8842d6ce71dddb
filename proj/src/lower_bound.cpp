#include "blockade/lower_bound.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace blockade {

namespace {

Rational max_power(const std::vector<Circle>& disks, const Point& x) {
  Rational best = disks.front().power(x);
  for (std::size_t i = 1; i < disks.size(); ++i) {
    Rational p = disks[i].power(x);
    if (p > best) best = std::move(p);
  }
  return best;
}

// Foot of the perpendicular from c onto the line {x : a . x = b}.
Point project_onto_line(const Point& c, const Vec& a, const Rational& b) {
  const Rational t = (b - dot(a, Vec{c.x, c.y})) / norm_sq(a);
  return c + t * a;
}

// Radical line of two circles as a . x = b; nullopt for concentric circles.
std::optional<std::pair<Vec, Rational>> radical_line(const Circle& ci, const Circle& cj) {
  const Vec a = 2 * (cj.center() - ci.center());
  if (a.x == 0 && a.y == 0) return std::nullopt;
  const Vec ci_v{ci.center().x, ci.center().y};
  const Vec cj_v{cj.center().x, cj.center().y};
  const Rational b = norm_sq(cj_v) - cj.radius_sq() - norm_sq(ci_v) + ci.radius_sq();
  return std::make_pair(a, b);
}

std::optional<Point> intersect_lines(const Vec& a1, const Rational& b1, const Vec& a2, const Rational& b2) {
  const Rational det = a1.x * a2.y - a1.y * a2.x;
  if (det == 0) return std::nullopt;
  return Point{(b1 * a2.y - a1.y * b2) / det, (a1.x * b2 - b1 * a2.x) / det};
}

}  // namespace

PowerMinimax power_minimax(const std::vector<Circle>& disks, const std::optional<HalfPlane>& half_plane) {
  if (disks.empty()) throw Error("EmptyQuery", "power_minimax needs at least one disk");

  std::vector<Point> candidates;
  const std::size_t m = disks.size();
  std::vector<std::optional<std::pair<Vec, Rational>>> lines(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    candidates.push_back(disks[i].center());
    for (std::size_t j = i + 1; j < m; ++j) {
      auto line = radical_line(disks[i], disks[j]);
      if (line) candidates.push_back(project_onto_line(disks[i].center(), line->first, line->second));
      lines[i * m + j] = std::move(line);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto& lij = lines[i * m + j];
      if (!lij) continue;
      for (std::size_t k = j + 1; k < m; ++k) {
        const auto& lik = lines[i * m + k];
        if (!lik) continue;
        if (auto x = intersect_lines(lij->first, lij->second, lik->first, lik->second)) candidates.push_back(*x);
      }
    }
  }

  if (half_plane) {
    std::erase_if(candidates, [&](const Point& x) { return half_plane->eval(x) < 0; });
    // One-dimensional candidates on the boundary line x0 + t u.
    const Vec& n = half_plane->normal;
    const Point x0{half_plane->offset * n.x / norm_sq(n), half_plane->offset * n.y / norm_sq(n)};
    const Vec u = perp(n);
    const Rational uu = norm_sq(u);
    std::vector<Rational> lin(m), cst(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Vec w = x0 - disks[i].center();
      lin[i] = 2 * dot(u, w);
      cst[i] = norm_sq(w) - disks[i].radius_sq();
      candidates.push_back(x0 + (-lin[i] / (2 * uu)) * u);
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const Rational slope = lin[i] - lin[j];
        if (slope == 0) continue;
        candidates.push_back(x0 + ((cst[j] - cst[i]) / slope) * u);
      }
    }
  }

  PowerMinimax best{max_power(disks, candidates.front()), candidates.front()};
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    Rational v = max_power(disks, candidates[c]);
    if (v < best.value) best = {std::move(v), candidates[c]};
  }
  return best;
}

std::optional<Point> region_sample(const std::vector<Circle>& disks, const std::optional<HalfPlane>& half_plane) {
  const PowerMinimax pm = power_minimax(disks, half_plane);
  if (pm.value >= 0) return std::nullopt;
  if (!half_plane || half_plane->eval(pm.argmin) > 0) return pm.argmin;
  // On the boundary line with slack in every disk: step off it.
  Rational step = 1;
  for (int iter = 0; iter < 4096; ++iter) {
    const Point x = pm.argmin + step * half_plane->normal;
    if (half_plane->eval(x) > 0 && max_power(disks, x) < 0) return x;
    step /= 2;
  }
  throw Error("InternalError", "failed to step off a half-plane boundary");
}

std::optional<Point> common_blocking_point(const std::vector<Circle>& circles, const ConvexChain& hull) {
  if (hull.full_dimensional()) {
    for (const HalfPlane& hp : outward_half_planes(hull)) {
      if (auto x = region_sample(circles, hp)) return x;
    }
    return std::nullopt;
  }
  // Lower-dimensional hull: removing a segment or a point from a nonempty
  // open set leaves it nonempty.
  auto x = region_sample(circles, std::nullopt);
  if (!x || strictly_outside(hull, *x)) return x;
  const Vec dir = hull.vertices.size() == 2 ? perp(hull.vertices[1] - hull.vertices[0]) : Vec{1, 0};
  Rational step = 1;
  for (int iter = 0; iter < 4096; ++iter) {
    for (int s : {1, -1}) {
      const Point y = *x + (s * step) * dir;
      if (strictly_outside(hull, y) && max_power(circles, y) < 0) return y;
    }
    step /= 2;
  }
  throw Error("InternalError", "failed to leave a degenerate hull");
}

bool area_nonempty(const BlockingArea& area) {
  return common_blocking_point({area.circle}, area.hull).has_value();
}

bool areas_disjoint(const BlockingArea& a, const BlockingArea& b) {
  // Disks that are apart or externally tangent have an empty open lens.
  const Rational d2 = dist_sq(a.circle.center(), b.circle.center());
  const Rational& ra = a.circle.radius_sq();
  const Rational& rb = b.circle.radius_sq();
  if (compare_sqrt_expr(ra + rb, 2, ra * rb, d2) <= 0) return true;
  return !common_blocking_point({a.circle, b.circle}, a.hull).has_value();
}

std::vector<std::vector<std::size_t>> OverlapGraph::components() const {
  std::vector<std::vector<std::size_t>> comps;
  std::vector<bool> seen(nodes, false);
  for (std::size_t s = 0; s < nodes; ++s) {
    if (seen[s] || !hittable[s]) continue;
    std::vector<std::size_t> comp;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (std::size_t w = 0; w < nodes; ++w) {
        if (adjacent[v][w] && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

OverlapGraph overlap_graph(const std::vector<Circle>& circles, const ConvexChain& hull) {
  OverlapGraph g;
  g.nodes = circles.size();
  g.hittable.assign(g.nodes, false);
  g.adjacent.assign(g.nodes, std::vector<bool>(g.nodes, false));
  for (std::size_t i = 0; i < g.nodes; ++i) {
    g.hittable[i] = common_blocking_point({circles[i]}, hull).has_value();
  }
  for (std::size_t i = 0; i < g.nodes; ++i) {
    if (!g.hittable[i]) continue;
    for (std::size_t j = i + 1; j < g.nodes; ++j) {
      if (!g.hittable[j]) continue;
      if (!areas_disjoint({circles[i], hull}, {circles[j], hull})) {
        g.adjacent[i][j] = g.adjacent[j][i] = true;
        g.edges.emplace_back(i, j);
      }
    }
  }
  return g;
}

std::string to_string(BoundMethod method) {
  return method == BoundMethod::kDisjointness ? "disjointness" : "hitting_set";
}

std::size_t max_independent_set(const std::vector<std::size_t>& nodes, const std::vector<std::vector<bool>>& adjacent,
                                 std::vector<std::size_t>* chosen) {
  std::vector<std::size_t> best_set;
  std::vector<std::size_t> current;

  std::function<void(std::vector<std::size_t>)> solve = [&](std::vector<std::size_t> remaining) {
    if (remaining.empty()) {
      if (current.size() > best_set.size()) best_set = current;
      return;
    }
    if (current.size() + remaining.size() <= best_set.size()) return;
    // Vertex of minimum degree within the remaining subgraph: if its degree
    // is <= 1, taking it is always optimal.
    std::size_t pick = 0, pick_deg = remaining.size() + 1, max_deg = 0, max_pos = 0;
    for (std::size_t a = 0; a < remaining.size(); ++a) {
      std::size_t deg = 0;
      for (std::size_t b = 0; b < remaining.size(); ++b) {
        if (adjacent[remaining[a]][remaining[b]]) ++deg;
      }
      if (deg < pick_deg) {
        pick_deg = deg;
        pick = a;
      }
      if (deg > max_deg) {
        max_deg = deg;
        max_pos = a;
      }
    }
    auto without_closed_nbhd = [&](std::size_t v) {
      std::vector<std::size_t> rest;
      for (std::size_t w : remaining) {
        if (w != v && !adjacent[v][w]) rest.push_back(w);
      }
      return rest;
    };
    if (pick_deg <= 1) {
      const std::size_t v = remaining[pick];
      current.push_back(v);
      solve(without_closed_nbhd(v));
      current.pop_back();
      return;
    }
    const std::size_t v = remaining[max_pos];
    current.push_back(v);
    solve(without_closed_nbhd(v));
    current.pop_back();
    std::vector<std::size_t> rest;
    for (std::size_t w : remaining) {
      if (w != v) rest.push_back(w);
    }
    solve(std::move(rest));
  };
  solve(nodes);
  std::sort(best_set.begin(), best_set.end());
  if (chosen) *chosen = best_set;
  return best_set.size();
}

std::size_t min_set_cover(const std::vector<std::size_t>& universe, const std::vector<std::vector<std::size_t>>& sets,
                          std::vector<std::size_t>* chosen) {
  if (universe.empty()) {
    if (chosen) chosen->clear();
    return 0;
  }
  std::map<std::size_t, std::size_t> local;
  for (std::size_t e : universe) local.emplace(e, local.size());
  const std::size_t n = local.size();

  std::vector<std::vector<std::size_t>> set_elems(sets.size());
  std::vector<std::vector<std::size_t>> containing(n);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (std::size_t e : sets[s]) {
      const auto it = local.find(e);
      if (it == local.end()) continue;
      set_elems[s].push_back(it->second);
      containing[it->second].push_back(s);
    }
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (containing[e].empty()) throw Error("Uncoverable", "element without a covering set");
  }

  std::vector<int> cover_count(n, 0);
  std::vector<std::size_t> current;
  std::vector<std::size_t> best;
  std::size_t best_size = n + 1;

  // Uncovered elements that pairwise share no set each need their own set.
  auto packing_bound = [&]() {
    std::vector<bool> blocked(sets.size(), false);
    std::size_t count = 0;
    for (std::size_t e = 0; e < n; ++e) {
      if (cover_count[e] > 0) continue;
      bool free = true;
      for (std::size_t s : containing[e]) {
        if (blocked[s]) {
          free = false;
          break;
        }
      }
      if (!free) continue;
      ++count;
      for (std::size_t s : containing[e]) blocked[s] = true;
    }
    return count;
  };

  std::function<void()> search = [&]() {
    if (current.size() + packing_bound() >= best_size) return;
    std::size_t pick = n;
    for (std::size_t e = 0; e < n; ++e) {
      if (cover_count[e] == 0 && (pick == n || containing[e].size() < containing[pick].size())) pick = e;
    }
    if (pick == n) {
      best = current;
      best_size = current.size();
      return;
    }
    std::vector<std::size_t> options = containing[pick];
    auto gain = [&](std::size_t s) {
      std::size_t g = 0;
      for (std::size_t e : set_elems[s]) g += cover_count[e] == 0;
      return g;
    };
    std::stable_sort(options.begin(), options.end(), [&](std::size_t a, std::size_t b) { return gain(a) > gain(b); });
    for (std::size_t s : options) {
      current.push_back(s);
      for (std::size_t e : set_elems[s]) ++cover_count[e];
      search();
      for (std::size_t e : set_elems[s]) --cover_count[e];
      current.pop_back();
    }
  };
  search();
  std::sort(best.begin(), best.end());
  if (chosen) *chosen = best;
  return best_size;
}

namespace {

Certificate base_certificate(const PointSet& P, const CircleFamily& family, const ConvexChain& hull) {
  const auto records = emptiness_audit(P, family);
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].on < 2 || records[i].inside != 0) {
      throw Error("EmptinessViolated", "circle " + family.circles[i].name() + " is not an empty witness circle");
    }
  }
  Certificate cert;
  cert.P = P;
  cert.circles = family;
  cert.overlaps = overlap_graph(family.plain(), hull);
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!cert.overlaps.hittable[i]) cert.unhittable.push_back(i);
  }
  for (const auto& comp : cert.overlaps.components()) {
    GroupBound group;
    group.circles = comp;
    std::vector<std::size_t> picked;
    group.disjoint = max_independent_set(comp, cert.overlaps.adjacent, &picked);
    cert.witness_family.insert(cert.witness_family.end(), picked.begin(), picked.end());
    cert.groups.push_back(std::move(group));
  }
  std::sort(cert.witness_family.begin(), cert.witness_family.end());
  return cert;
}

}  // namespace

Certificate disjointness_bound(const PointSet& P, const CircleFamily& circles) {
  const ConvexChain hull = convex_hull(P.points);
  Certificate cert = base_certificate(P, circles, hull);
  cert.method = BoundMethod::kDisjointness;
  cert.bound = cert.witness_family.size();
  return cert;
}

Certificate hitting_set_bound(const PointSet& P, const CircleFamily& circles, const LowerBoundOptions& options) {
  const ConvexChain hull = convex_hull(P.points);
  Certificate cert = base_certificate(P, circles, hull);
  cert.method = BoundMethod::kHittingSet;
  const std::vector<Circle> plain = circles.plain();
  cert.cells.circle_to_cells.assign(circles.size(), {});

  for (GroupBound& group : cert.groups) {
    const auto& comp = group.circles;
    // Achievable signatures are closed under subsets, so growing sets one
    // circle at a time in increasing index order enumerates all of them.
    std::map<std::vector<std::size_t>, Point> achievable;
    std::vector<std::size_t> current;
    bool overflow = false;
    std::function<void(std::size_t)> grow = [&](std::size_t start) {
      for (std::size_t pos = start; pos < comp.size() && !overflow; ++pos) {
        const std::size_t j = comp[pos];
        bool compatible = true;
        for (std::size_t i : current) {
          if (!cert.overlaps.adjacent[i][j]) {
            compatible = false;
            break;
          }
        }
        if (!compatible) continue;
        current.push_back(j);
        std::vector<Circle> disks;
        for (std::size_t i : current) disks.push_back(plain[i]);
        if (auto x = common_blocking_point(disks, hull)) {
          achievable.emplace(current, *x);
          if (achievable.size() > options.cell_cap) overflow = true;
          grow(pos + 1);
        }
        current.pop_back();
      }
    };
    grow(0);

    if (overflow) {
      group.overflow = true;
      cert.overflow = true;
      group.hitting = group.disjoint;
      continue;
    }

    std::vector<std::vector<std::size_t>> maximal;
    for (const auto& [sig, sample] : achievable) {
      bool is_max = true;
      for (std::size_t j : comp) {
        if (std::binary_search(sig.begin(), sig.end(), j)) continue;
        std::vector<std::size_t> bigger = sig;
        bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), j), j);
        if (achievable.count(bigger)) {
          is_max = false;
          break;
        }
      }
      if (!is_max) continue;
      maximal.push_back(sig);
      const std::size_t cell_id = cert.cells.cells.size();
      cert.cells.cells.push_back({sample, sig});
      for (std::size_t i : sig) cert.cells.circle_to_cells[i].push_back(cell_id);
    }
    group.cells = maximal.size();
    group.hitting = min_set_cover(comp, maximal);
  }

  cert.bound = 0;
  for (const GroupBound& g : cert.groups) cert.bound += g.hitting;
  return cert;
}

std::vector<std::size_t> audit_cells(const Certificate& cert) {
  const ConvexChain hull = convex_hull(cert.P.points);
  std::vector<std::size_t> bad;
  for (std::size_t c = 0; c < cert.cells.cells.size(); ++c) {
    const Cell& cell = cert.cells.cells[c];
    std::vector<std::size_t> sig;
    for (std::size_t i = 0; i < cert.circles.size(); ++i) {
      if (in_circle_sign(cert.circles.circles[i].circle, cell.sample) < 0) sig.push_back(i);
    }
    if (sig != cell.circles || !strictly_outside(hull, cell.sample)) bad.push_back(c);
  }
  return bad;
}

}  // namespace blockade
