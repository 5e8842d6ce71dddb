#pragma once

#include <array>
#include <string>
#include <vector>

#include "blockade/delaunay.hpp"
#include "blockade/geometry.hpp"

namespace blockade {

/// Four-point unit: left, middle and right bottom points plus a top point.
struct Gadget {
  int index = 0;
  Point ell, m, r, t;
};

enum class CircleRole { F1, G1, F2, G2, H, F3, G3, I2 };

std::string to_string(CircleRole role);
CircleRole parse_circle_role(const std::string& text);

struct FamilyCircle {
  CircleRole role;
  int gadget;
  Circle circle;
  /// Indices of the two defining points in the construction's point set.
  std::array<std::size_t, 2> through;

  std::string name() const;
};

struct CircleFamily {
  std::vector<FamilyCircle> circles;

  std::size_t size() const { return circles.size(); }
  std::vector<Circle> plain() const;
};

/// Number of points of `points` on each circle and strictly inside it.
struct EmptinessRecord {
  std::size_t on = 0;
  std::size_t inside = 0;
};

std::vector<EmptinessRecord> emptiness_audit(const PointSet& points, const CircleFamily& family);

/// Throws Error("EmptinessViolated") naming the first circle that does not
/// have exactly two points on it and none inside.
void require_empty_circles(const PointSet& points, const CircleFamily& family);

/// Collinear set P0 with 4k points, gadget i scaled by 2^-i.
struct P0Result {
  PointSet points;
  std::vector<Gadget> gadgets;
};

P0Result build_p0(int k);

/// Points in gadget-major order ell, m, r, t.
PointSet gadget_points(const std::vector<Gadget>& gadgets);

CircleFamily build_c0(const std::vector<Gadget>& gadgets);

/// Image of gadgets under the cubic perturbation: bottom points move by
/// +tau x^3, top points by -tau x^3.
struct PerturbedSet {
  std::vector<Gadget> base;
  Rational tau;
  std::vector<Gadget> gadgets;
  PointSet points;
};

PerturbedSet perturb(const std::vector<Gadget>& base, const Rational& tau);

/// Circle family of the general-position construction, recomputed at tau.
/// Throws Error("EmptinessViolated") when tau is too large for the circles
/// to stay empty.
CircleFamily build_c0_prime(const std::vector<Gadget>& base, const Rational& tau);

/// Same circles without the emptiness check, for diagnostics at large tau.
CircleFamily build_c0_prime_unchecked(const std::vector<Gadget>& base, const Rational& tau);

/// Three points per gadget (middle point removed) and circles F1, G1, I2, H.
struct Alt3kResult {
  PointSet points;
  std::vector<Gadget> gadgets;
  CircleFamily circles;
};

Alt3kResult build_alt_3k(int k);

enum class ConstructionKind { kCollinear, kGeneral, kAlt3k };

ConstructionKind parse_construction_kind(const std::string& text);
std::string to_string(ConstructionKind kind);

}  // namespace blockade
