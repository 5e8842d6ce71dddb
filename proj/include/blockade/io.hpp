#pragma once

#include <json.hpp>

#include "blockade/constructions.hpp"
#include "blockade/delaunay.hpp"
#include "blockade/lower_bound.hpp"
#include "blockade/perturbation.hpp"
#include "blockade/solver.hpp"

namespace blockade {

using Json = nlohmann::json;

/// Rationals travel as "num/den" strings; integer JSON numbers are accepted
/// on input. Anything else throws Error("SchemaViolation").
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j, const char* field);

/// Required member lookup; throws Error("SchemaViolation") when absent.
const Json& require_field(const Json& j, const char* field);

Json to_json(const Point& p);
Point point_from_json(const Json& j);

Json to_json(const PointSet& set);
/// Accepts {"points": [...]} or a bare array.
PointSet point_set_from_json(const Json& j);

Json to_json(const Circle& c);
Circle circle_from_json(const Json& j);

Json to_json(const FamilyCircle& c);
Json to_json(const CircleFamily& family);
/// Each entry may carry role/gadget/through; plain circles get role H,
/// gadget 0 and no defining points.
CircleFamily circle_family_from_json(const Json& j);

Json to_json(const Edge& e);
Json to_json(const WitnessInterval& w);
Json to_json(const Verdict& v);
BlockingInstance blocking_instance_from_json(const Json& j);

/// `explain` adds the overlap graph, per-group bounds and the cells.
Json to_json(const Certificate& cert, bool explain = false);

Json to_json(const TauPolynomial& p);
Json to_json(const AuditResult& a);
Json to_json(const EpsilonCertificate& cert);

Json to_json(const SolveResult& r);
Json to_json(const ProbeReport& r);
Json to_json(const MinimalSearchResult& r);

}  // namespace blockade
