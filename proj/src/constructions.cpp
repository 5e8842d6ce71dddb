#include "blockade/constructions.hpp"

#include <map>

namespace blockade {

std::string to_string(CircleRole role) {
  switch (role) {
    case CircleRole::F1: return "F1";
    case CircleRole::G1: return "G1";
    case CircleRole::F2: return "F2";
    case CircleRole::G2: return "G2";
    case CircleRole::H: return "H";
    case CircleRole::F3: return "F3";
    case CircleRole::G3: return "G3";
    case CircleRole::I2: return "I2";
  }
  return "?";
}

CircleRole parse_circle_role(const std::string& text) {
  static const std::map<std::string, CircleRole> roles = {
      {"F1", CircleRole::F1}, {"G1", CircleRole::G1}, {"F2", CircleRole::F2}, {"G2", CircleRole::G2},
      {"H", CircleRole::H},   {"F3", CircleRole::F3}, {"G3", CircleRole::G3}, {"I2", CircleRole::I2}};
  const auto it = roles.find(text);
  if (it == roles.end()) throw Error("BadRole", "unknown circle role '" + text + "'");
  return it->second;
}

std::string FamilyCircle::name() const { return to_string(role) + "^" + std::to_string(gadget); }

std::vector<Circle> CircleFamily::plain() const {
  std::vector<Circle> out;
  out.reserve(circles.size());
  for (const auto& fc : circles) out.push_back(fc.circle);
  return out;
}

std::vector<EmptinessRecord> emptiness_audit(const PointSet& points, const CircleFamily& family) {
  std::vector<EmptinessRecord> records;
  records.reserve(family.size());
  for (const auto& fc : family.circles) {
    EmptinessRecord rec;
    for (const Point& p : points.points) {
      const int s = in_circle_sign(fc.circle, p);
      if (s == 0) ++rec.on;
      if (s < 0) ++rec.inside;
    }
    records.push_back(rec);
  }
  return records;
}

void require_empty_circles(const PointSet& points, const CircleFamily& family) {
  const auto records = emptiness_audit(points, family);
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].on != 2 || records[i].inside != 0) {
      throw Error("EmptinessViolated", "circle " + family.circles[i].name() + " has " +
                                           std::to_string(records[i].on) + " points on it and " +
                                           std::to_string(records[i].inside) + " inside");
    }
  }
}

P0Result build_p0(int k) {
  if (k < 1) throw Error("InvalidK", "k must be at least 1");
  P0Result out;
  for (int i = 1; i <= k; ++i) {
    const Rational scale = pow2(-i);
    const Rational offset = 3 + 14 * (1 - scale);
    Gadget g;
    g.index = i;
    g.ell = {offset - 2 * scale, 0};
    g.m = {offset, 0};
    g.r = {offset + 2 * scale, 0};
    g.t = {offset, 3 * scale};
    out.gadgets.push_back(g);
  }
  out.points = gadget_points(out.gadgets);
  return out;
}

PointSet gadget_points(const std::vector<Gadget>& gadgets) {
  PointSet ps;
  for (const Gadget& g : gadgets) {
    const std::string i = std::to_string(g.index);
    ps.add(g.ell, "ell_" + i);
    ps.add(g.m, "m_" + i);
    ps.add(g.r, "r_" + i);
    ps.add(g.t, "t_" + i);
  }
  return ps;
}

namespace {

// Index layout of gadget_points: 4 (i - 1) + {ell, m, r, t}.
enum Slot : std::size_t { kEll = 0, kMid = 1, kRight = 2, kTop = 3 };

std::size_t slot(int gadget, Slot s) { return 4 * static_cast<std::size_t>(gadget - 1) + s; }

const Vec kXAxis{1, 0};

FamilyCircle make(CircleRole role, int gadget, Circle c, std::size_t a, std::size_t b) {
  return FamilyCircle{role, gadget, std::move(c), {a, b}};
}

}  // namespace

CircleFamily build_c0(const std::vector<Gadget>& gadgets) {
  if (gadgets.empty()) throw Error("InvalidK", "need at least one gadget");
  CircleFamily fam;
  const int k = static_cast<int>(gadgets.size());
  for (int i = 1; i <= k; ++i) {
    const Gadget& g = gadgets[i - 1];
    fam.circles.push_back(make(CircleRole::F1, i, circle_through_tangent_at(g.ell, g.t, kXAxis), slot(i, kEll), slot(i, kTop)));
    fam.circles.push_back(make(CircleRole::G1, i, circle_through_tangent_at(g.r, g.t, kXAxis), slot(i, kRight), slot(i, kTop)));
    fam.circles.push_back(make(CircleRole::F2, i, circle_from_diameter(g.ell, g.m), slot(i, kEll), slot(i, kMid)));
    fam.circles.push_back(make(CircleRole::G2, i, circle_from_diameter(g.m, g.r), slot(i, kMid), slot(i, kRight)));
    if (i < k) {
      fam.circles.push_back(make(CircleRole::H, i, circle_from_diameter(g.r, gadgets[i].ell), slot(i, kRight), slot(i + 1, kEll)));
    }
  }
  return fam;
}

PerturbedSet perturb(const std::vector<Gadget>& base, const Rational& tau) {
  if (tau < 0) throw Error("InvalidTau", "tau must be non-negative");
  PerturbedSet out;
  out.base = base;
  out.tau = tau;
  auto lift = [&](const Point& p, int sigma) {
    return Point{p.x, p.y + sigma * tau * p.x * p.x * p.x};
  };
  for (const Gadget& g : base) {
    Gadget h = g;
    h.ell = lift(g.ell, +1);
    h.m = lift(g.m, +1);
    h.r = lift(g.r, +1);
    h.t = lift(g.t, -1);
    out.gadgets.push_back(h);
  }
  out.points = gadget_points(out.gadgets);
  return out;
}

CircleFamily build_c0_prime_unchecked(const std::vector<Gadget>& base, const Rational& tau) {
  const int k = static_cast<int>(base.size());
  if (k < 2) throw Error("InvalidK", "the general-position family needs k >= 2");
  const PerturbedSet ps = perturb(base, tau);
  const auto& gs = ps.gadgets;

  // Roles per gadget position: first {F2, G2, H}, middle all seven,
  // last {F2, G2}.
  CircleFamily fam;
  for (int i = 1; i <= k; ++i) {
    const Gadget& g = gs[i - 1];
    const bool first = i == 1;
    const bool last = i == k;
    if (!first && !last) {
      // Tangent at ell_i to r_{i-1} ell_i, and at r_i to r_i ell_{i+1}.
      fam.circles.push_back(make(CircleRole::F1, i, circle_through_tangent_at(g.ell, g.t, g.ell - gs[i - 2].r), slot(i, kEll), slot(i, kTop)));
      fam.circles.push_back(make(CircleRole::G1, i, circle_through_tangent_at(g.r, g.t, gs[i].ell - g.r), slot(i, kRight), slot(i, kTop)));
    }
    fam.circles.push_back(make(CircleRole::F2, i, circle_from_diameter(g.ell, g.m), slot(i, kEll), slot(i, kMid)));
    fam.circles.push_back(make(CircleRole::G2, i, circle_from_diameter(g.m, g.r), slot(i, kMid), slot(i, kRight)));
    if (!first && !last) {
      // F3 tangent at t_i to t_i t_{i+1}; G3 tangent at m_i to ell_i m_i.
      fam.circles.push_back(make(CircleRole::F3, i, circle_through_tangent_at(g.t, g.m, gs[i].t - g.t), slot(i, kMid), slot(i, kTop)));
      fam.circles.push_back(make(CircleRole::G3, i, circle_through_tangent_at(g.m, g.t, g.m - g.ell), slot(i, kMid), slot(i, kTop)));
    }
    if (!last) {
      fam.circles.push_back(make(CircleRole::H, i, circle_from_diameter(g.r, gs[i].ell), slot(i, kRight), slot(i + 1, kEll)));
    }
  }
  return fam;
}

CircleFamily build_c0_prime(const std::vector<Gadget>& base, const Rational& tau) {
  CircleFamily fam = build_c0_prime_unchecked(base, tau);
  require_empty_circles(perturb(base, tau).points, fam);
  return fam;
}

Alt3kResult build_alt_3k(int k) {
  if (k < 1) throw Error("InvalidK", "k must be at least 1");
  Alt3kResult out;
  out.gadgets = build_p0(k).gadgets;
  for (const Gadget& g : out.gadgets) {
    const std::string i = std::to_string(g.index);
    out.points.add(g.ell, "ell_" + i);
    out.points.add(g.r, "r_" + i);
    out.points.add(g.t, "t_" + i);
  }
  auto idx = [](int gadget, std::size_t s) { return 3 * static_cast<std::size_t>(gadget - 1) + s; };
  for (int i = 1; i <= k; ++i) {
    const Gadget& g = out.gadgets[i - 1];
    out.circles.circles.push_back(make(CircleRole::F1, i, circle_through_tangent_at(g.ell, g.t, kXAxis), idx(i, 0), idx(i, 2)));
    out.circles.circles.push_back(make(CircleRole::G1, i, circle_through_tangent_at(g.r, g.t, kXAxis), idx(i, 1), idx(i, 2)));
    out.circles.circles.push_back(make(CircleRole::I2, i, circle_from_diameter(g.ell, g.r), idx(i, 0), idx(i, 1)));
    if (i < k) {
      out.circles.circles.push_back(make(CircleRole::H, i, circle_from_diameter(g.r, out.gadgets[i].ell), idx(i, 1), idx(i + 1, 0)));
    }
  }
  return out;
}

ConstructionKind parse_construction_kind(const std::string& text) {
  if (text == "collinear" || text == "p0") return ConstructionKind::kCollinear;
  if (text == "general" || text == "c0prime") return ConstructionKind::kGeneral;
  if (text == "alt3k") return ConstructionKind::kAlt3k;
  throw Error("BadConstruction", "unknown construction '" + text + "'");
}

std::string to_string(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::kCollinear: return "collinear";
    case ConstructionKind::kGeneral: return "general";
    case ConstructionKind::kAlt3k: return "alt3k";
  }
  return "?";
}

}  // namespace blockade
