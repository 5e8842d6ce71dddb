#include "blockade/io.hpp"

#include <algorithm>

namespace blockade {

namespace {

[[noreturn]] void schema(const std::string& message) { throw Error("SchemaViolation", message); }

std::size_t index_from_json(const Json& j, const char* field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) schema(std::string(field) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

Json optional_rational(const std::optional<Rational>& q) { return q ? rational_json(*q) : Json(nullptr); }

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j, const char* field) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      schema(std::string(field) + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  schema(std::string(field) + " must be a rational string \"num/den\"");
}

const Json& require_field(const Json& j, const char* field) {
  if (!j.is_object()) schema(std::string("expected an object with field ") + field);
  const auto it = j.find(field);
  if (it == j.end()) schema(std::string("missing field ") + field);
  return *it;
}

Json to_json(const Point& p) { return {{"x", rational_json(p.x)}, {"y", rational_json(p.y)}}; }

Point point_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2) return {rational_from_json(j[0], "x"), rational_from_json(j[1], "y")};
  return {rational_from_json(require_field(j, "x"), "x"), rational_from_json(require_field(j, "y"), "y")};
}

Json to_json(const PointSet& set) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    Json p = to_json(set.points[i]);
    if (!set.label(i).empty()) p["label"] = set.label(i);
    pts.push_back(std::move(p));
  }
  return {{"points", std::move(pts)}};
}

PointSet point_set_from_json(const Json& j) {
  const Json& pts = j.is_array() ? j : require_field(j, "points");
  if (!pts.is_array()) schema("points must be an array");
  bool labelled = false;
  for (const auto& p : pts) labelled = labelled || (p.is_object() && p.contains("label"));
  PointSet set;
  for (const auto& p : pts) {
    std::string label;
    if (labelled) {
      if (p.is_object() && p.contains("label")) {
        if (!p["label"].is_string()) schema("label must be a string");
        label = p["label"].get<std::string>();
      }
    }
    set.points.push_back(point_from_json(p));
    if (labelled) set.labels.push_back(label);
  }
  return set;
}

Json to_json(const Circle& c) { return {{"center", to_json(c.center())}, {"radius_sq", rational_json(c.radius_sq())}}; }

Circle circle_from_json(const Json& j) {
  return Circle(point_from_json(require_field(j, "center")), rational_from_json(require_field(j, "radius_sq"), "radius_sq"));
}

Json to_json(const FamilyCircle& c) {
  Json j = to_json(c.circle);
  j["name"] = c.name();
  j["role"] = to_string(c.role);
  j["gadget"] = c.gadget;
  j["through"] = {c.through[0], c.through[1]};
  return j;
}

Json to_json(const CircleFamily& family) {
  Json arr = Json::array();
  for (const auto& c : family.circles) arr.push_back(to_json(c));
  return {{"circles", std::move(arr)}};
}

CircleFamily circle_family_from_json(const Json& j) {
  const Json& arr = j.is_array() ? j : require_field(j, "circles");
  if (!arr.is_array()) schema("circles must be an array");
  CircleFamily family;
  for (const auto& c : arr) {
    FamilyCircle fc{CircleRole::H, 0, circle_from_json(c), {0, 0}};
    if (c.contains("role")) {
      try {
        fc.role = parse_circle_role(c["role"].get<std::string>());
      } catch (const std::exception& e) {
        schema(std::string("role: ") + e.what());
      }
    }
    if (c.contains("gadget")) {
      if (!c["gadget"].is_number_integer()) schema("gadget must be an integer");
      fc.gadget = c["gadget"].get<int>();
    }
    if (c.contains("through")) {
      const Json& t = c["through"];
      if (!t.is_array() || t.size() != 2) schema("through must be a pair of indices");
      fc.through = {index_from_json(t[0], "through"), index_from_json(t[1], "through")};
    }
    family.circles.push_back(std::move(fc));
  }
  return family;
}

Json to_json(const Edge& e) { return Json::array({e.first, e.second}); }

Json to_json(const WitnessInterval& w) {
  return {{"edge", to_json(w.edge)},       {"lo", optional_rational(w.lo)},
          {"hi", optional_rational(w.hi)}, {"lo_closed", w.lo_closed},
          {"hi_closed", w.hi_closed},      {"chord_blocked", w.chord_blocked},
          {"empty", w.empty()}};
}

Json to_json(const Verdict& v) {
  Json unblocked = Json::array();
  for (const auto& e : v.unblocked) unblocked.push_back(to_json(e));
  return {{"verdict", to_string(v.kind)}, {"unblocked", std::move(unblocked)}, {"violations", v.violations}};
}

BlockingInstance blocking_instance_from_json(const Json& j) {
  BlockingInstance inst;
  inst.P = point_set_from_json(require_field(j, "P"));
  if (j.contains("Q")) inst.Q = point_set_from_json(j["Q"]);
  if (j.contains("exterior_only")) {
    if (!j["exterior_only"].is_boolean()) schema("exterior_only must be a boolean");
    inst.exterior_only = j["exterior_only"].get<bool>();
  }
  return inst;
}

Json to_json(const Certificate& cert, bool explain) {
  Json witness = Json::array();
  for (auto i : cert.witness_family) witness.push_back(cert.circles.circles[i].name());
  Json unhittable = Json::array();
  for (auto i : cert.unhittable) unhittable.push_back(cert.circles.circles[i].name());
  Json j = {{"bound", cert.bound},
            {"method", to_string(cert.method)},
            {"points", cert.P.size()},
            {"circles", cert.circles.size()},
            {"witness_family", std::move(witness)},
            {"unhittable", std::move(unhittable)},
            {"overflow", cert.overflow}};
  if (!explain) return j;
  const auto name = [&](std::size_t i) { return cert.circles.circles[i].name(); };
  Json edges = Json::array();
  for (const auto& [a, b] : cert.overlaps.edges) edges.push_back({name(a), name(b)});
  j["overlap_graph"] = {{"nodes", cert.overlaps.nodes}, {"edges", std::move(edges)}};
  Json groups = Json::array();
  for (const auto& g : cert.groups) {
    Json members = Json::array();
    for (auto i : g.circles) members.push_back(name(i));
    groups.push_back({{"circles", std::move(members)},
                      {"disjoint", g.disjoint},
                      {"hitting", g.hitting},
                      {"cells", g.cells},
                      {"overflow", g.overflow}});
  }
  j["groups"] = std::move(groups);
  Json cells = Json::array();
  for (const auto& c : cert.cells.cells) {
    Json members = Json::array();
    for (auto i : c.circles) members.push_back(name(i));
    cells.push_back({{"sample", to_json(c.sample)}, {"circles", std::move(members)}});
  }
  j["cells"] = std::move(cells);
  j["family"] = to_json(cert.circles)["circles"];
  return j;
}

Json to_json(const TauPolynomial& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(rational_json(c));
  return {{"kind", to_string(p.kind)}, {"witness", p.witness}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const AuditResult& a) { return {{"id", a.id}, {"passed", a.passed}, {"detail", a.detail}}; }

Json to_json(const EpsilonCertificate& cert) {
  Json audits = Json::array();
  for (const auto& a : cert.audits) audits.push_back(to_json(a));
  return {{"k", cert.k},
          {"tau_star", rational_json(cert.tau_star)},
          {"positive_root_bound", rational_json(cert.positive_root_bound)},
          {"halvings", cert.halvings},
          {"audited_conditions", cert.audited_conditions()},
          {"audits", std::move(audits)}};
}

Json to_json(const SolveResult& r) {
  Json j = to_json(r.Q);
  j["verified"] = r.verified;
  j["size"] = r.size;
  j["status"] = r.status;
  j["unblocked_history"] = r.unblocked_history;
  return j;
}

Json to_json(const ProbeReport& r) {
  Json attempts = Json::array();
  for (const auto& a : r.attempts) attempts.push_back({{"strategy", a.strategy}, {"size", a.size}, {"verified", a.verified}});
  return {{"n", r.n},
          {"status", r.status},
          {"best_size", r.best_size},
          {"best", r.best ? to_json(*r.best)["points"] : Json(nullptr)},
          {"attempts", std::move(attempts)}};
}

Json to_json(const MinimalSearchResult& r) {
  return {{"size", r.size},
          {"nodes", r.nodes},
          {"truncated", r.truncated},
          {"points", r.Q ? to_json(*r.Q)["points"] : Json(nullptr)}};
}

}  // namespace blockade
