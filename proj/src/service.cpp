#include "blockade/service.hpp"

#include <cstdlib>
#include <map>

namespace blockade {

Deadline::Deadline(std::optional<long> ms) {
  if (ms && *ms > 0) until_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(*ms);
}

std::optional<long> time_budget_from_env() {
  const char* raw = std::getenv("BLOCKADE_TIME_BUDGET_MS");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const long ms = std::strtol(raw, &end, 10);
  if (*end != '\0' || ms < 0) throw Error("SchemaViolation", "BLOCKADE_TIME_BUDGET_MS must be a nonnegative integer");
  if (ms == 0) return std::nullopt;
  return ms;
}

bool Deadline::expired() const { return until_ && std::chrono::steady_clock::now() >= *until_; }

namespace {

[[noreturn]] void schema(const std::string& message) { throw Error("SchemaViolation", message); }

template <class T>
T get_or(const Json& params, const char* field, T fallback) {
  if (!params.contains(field) || params[field].is_null()) return fallback;
  const Json& v = params[field];
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) schema(std::string(field) + " must be a boolean");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) schema(std::string(field) + " must be an integer");
  } else {
    if (!v.is_string()) schema(std::string(field) + " must be a string");
  }
  return v.get<T>();
}

int get_k(const Json& params) {
  const Json& v = require_field(params, "k");
  if (!v.is_number_integer()) schema("k must be an integer");
  const long k = v.get<long>();
  if (k < 1 || k > 64) throw Error("InvalidK", "k must be in 1..64");
  return static_cast<int>(k);
}

Json merge(Json a, const Json& b) {
  for (auto it = b.begin(); it != b.end(); ++it) a[it.key()] = it.value();
  return a;
}

/// tau from params: a rational, or "auto" for the certified value.
Rational resolve_tau(const Json& params, int k, const Deadline& deadline) {
  if (!params.contains("tau") || (params["tau"].is_string() && params["tau"] == "auto")) {
    EpsilonOptions opts;
    opts.should_stop = [&] { return deadline.expired(); };
    return certify_epsilon(k, opts).tau_star;
  }
  const Rational tau = rational_from_json(params["tau"], "tau");
  if (tau < 0) throw Error("InvalidTau", "tau must be nonnegative");
  return tau;
}

struct Built {
  PointSet points;
  CircleFamily circles;
  std::optional<Rational> tau;
};

Built build(ConstructionKind kind, int k, const Json& params, const Deadline& deadline) {
  switch (kind) {
    case ConstructionKind::kCollinear: {
      auto p0 = build_p0(k);
      return {p0.points, build_c0(p0.gadgets), std::nullopt};
    }
    case ConstructionKind::kGeneral: {
      if (k < 2) throw Error("InvalidK", "the general-position family needs k >= 2");
      const auto base = build_p0(k).gadgets;
      const Rational tau = resolve_tau(params, k, deadline);
      auto perturbed = perturb(base, tau);
      return {perturbed.points, build_c0_prime(base, tau), tau};
    }
    case ConstructionKind::kAlt3k: {
      auto alt = build_alt_3k(k);
      return {alt.points, alt.circles, std::nullopt};
    }
  }
  throw Error("BadConstruction", "unknown construction");
}

ConstructionKind kind_field(const Json& params, const char* field) {
  const Json& v = require_field(params, field);
  if (!v.is_string()) schema(std::string(field) + " must be a string");
  try {
    return parse_construction_kind(v.get<std::string>());
  } catch (const Error& e) {
    schema(e.what());
  }
}

Json op_delaunay(const Json& params) {
  const PointSet set = point_set_from_json(params);
  require_distinct(set.points);
  Json edges = Json::array();
  Json intervals = Json::array();
  for (const auto& e : delaunay_edges(set)) {
    edges.push_back(to_json(e));
    intervals.push_back(to_json(witness_interval(set, e.first, e.second)));
  }
  return {{"edges", std::move(edges)}, {"witness_intervals", std::move(intervals)}};
}

Json op_blocks(const Json& params) { return to_json(blocks(blocking_instance_from_json(params))); }

Json op_construct(const Json& params, const Deadline& deadline) {
  const auto kind = kind_field(params, "kind");
  const int k = get_k(params);
  const Built b = build(kind, k, params, deadline);
  Json j = merge(to_json(b.points), to_json(b.circles));
  j["kind"] = to_string(kind);
  j["k"] = k;
  if (b.tau) j["tau"] = rational_json(*b.tau);
  return j;
}

Json op_certify_lb(const Json& params, const Deadline& deadline) {
  PointSet P;
  CircleFamily circles;
  Json head = Json::object();
  if (params.contains("construction")) {
    const auto kind = kind_field(params, "construction");
    const int k = get_k(params);
    Built b = build(kind, k, params, deadline);
    P = std::move(b.points);
    circles = std::move(b.circles);
    head["construction"] = to_string(kind);
    head["k"] = k;
    if (b.tau) head["tau"] = rational_json(*b.tau);
  } else {
    P = point_set_from_json(require_field(params, "P"));
    circles = circle_family_from_json(require_field(params, "circles"));
  }
  const std::string method = get_or<std::string>(params, "method", "hitting_set");
  Certificate cert;
  if (method == "hitting_set") {
    LowerBoundOptions opts;
    opts.cell_cap = get_or<std::size_t>(params, "cell_cap", opts.cell_cap);
    cert = hitting_set_bound(P, circles, opts);
  } else if (method == "disjointness") {
    cert = disjointness_bound(P, circles);
  } else {
    schema("method must be hitting_set or disjointness");
  }
  return merge(head, to_json(cert, get_or<bool>(params, "explain", false)));
}

Json op_certify_epsilon(const Json& params, const Deadline& deadline) {
  EpsilonOptions opts;
  if (params.contains("start_tau")) opts.start_tau = rational_from_json(params["start_tau"], "start_tau");
  opts.max_halvings = get_or<int>(params, "max_halvings", opts.max_halvings);
  opts.should_stop = [&] { return deadline.expired(); };
  return to_json(certify_epsilon(get_k(params), opts));
}

Json op_solve(const Json& params, const Deadline& deadline) {
  const PointSet P = point_set_from_json(require_field(params, "P"));
  require_distinct(P.points);
  SolverConfig cfg;
  cfg.exterior_only = get_or<bool>(params, "exterior_only", false);
  cfg.seed = get_or<std::uint64_t>(params, "seed", cfg.seed);
  cfg.candidate_density = get_or<int>(params, "candidate_density", cfg.candidate_density);
  cfg.max_rounds = get_or<int>(params, "max_rounds", cfg.max_rounds);
  cfg.prune = get_or<bool>(params, "prune", cfg.prune);
  cfg.general_position = get_or<bool>(params, "general_position", cfg.general_position);
  cfg.should_stop = [&] { return deadline.expired(); };
  const std::string strategy = get_or<std::string>(params, "strategy", "auto");

  if (strategy == "midpoint" || strategy == "auto") {
    const Rational offset = params.contains("offset") ? rational_from_json(params["offset"], "offset") : Rational(1, 100);
    std::optional<PointSet> Q;
    try {
      Q = midpoint_heuristic(P, offset);
    } catch (const Error&) {
      if (strategy == "midpoint") throw;
    }
    if (Q) {
      const bool ok = blocks({P, *Q, cfg.exterior_only}).blocked();
      if (ok || strategy == "midpoint") {
        SolveResult r;
        r.Q = *Q;
        r.verified = ok;
        r.size = Q->size();
        r.status = ok ? "blocked" : "Unblocked";
        return merge(to_json(r), {{"strategy", "midpoint"}});
      }
    }
  } else if (strategy == "exhaustive") {
    const auto r = exhaustive_minimal(P, cfg.exterior_only, get_or<std::size_t>(params, "min_size", 1),
                                      get_or<std::size_t>(params, "max_size", 2 * P.size() + 2));
    return merge(to_json(r), {{"strategy", "exhaustive"}});
  } else if (strategy != "greedy") {
    schema("strategy must be auto, midpoint, greedy or exhaustive");
  }
  return merge(to_json(greedy_cover_solve(P, cfg)), {{"strategy", "greedy"}});
}

Json op_probe(const Json& params) {
  PointSet P;
  if (params.contains("ngon")) {
    const Json& n = params["ngon"];
    if (!n.is_number_integer()) schema("ngon must be an integer");
    P = regular_polygon(n.get<int>());
  } else {
    P = point_set_from_json(require_field(params, "P"));
  }
  const auto report = conjecture_probe(P, get_or<int>(params, "budget", 8), get_or<bool>(params, "exterior_only", false));
  return merge(to_json(report), {{"P", to_json(P)["points"]}});
}

bool schema_code(const std::string& code) {
  return code == "SchemaViolation" || code == "BadRational" || code == "UnknownOp" || code == "BadConstruction" ||
         code == "BadRole";
}

Json error_body(const std::string& code, const std::string& message, Json detail) {
  return {{"ok", false}, {"error", {{"code", code}, {"message", message}, {"detail", std::move(detail)}}}};
}

}  // namespace

Json run_op(const std::string& op, const Json& params, const Deadline& deadline) {
  if (op == "health") return Json::object();
  if (!params.is_object()) schema("request body must be a JSON object");
  if (op == "delaunay") return op_delaunay(params);
  if (op == "blocks") return op_blocks(params);
  if (op == "construct") return op_construct(params, deadline);
  if (op == "certify-lb") return op_certify_lb(params, deadline);
  if (op == "certify-epsilon") return op_certify_epsilon(params, deadline);
  if (op == "solve") return op_solve(params, deadline);
  if (op == "probe") return op_probe(params);
  throw Error("UnknownOp", "unknown operation '" + op + "'");
}

ApiResponse handle(const std::string& op, const Json& params, const Deadline& deadline) {
  try {
    Json result = run_op(op, params, deadline);
    if (op == "health") return {200, {{"ok", true}}};
    return {200, {{"ok", true}, {"result", std::move(result)}}};
  } catch (const Error& e) {
    const std::string message = e.what();
    if (e.code() == "TimeBudgetExceeded") {
      Json detail = Json::object();
      const std::string prefix = "resume_tau=";
      if (message.rfind(prefix, 0) == 0) detail["resume_tau"] = message.substr(prefix.size());
      return {503, error_body(e.code(), message, std::move(detail))};
    }
    return {schema_code(e.code()) ? 400 : 422, error_body(e.code(), message, nullptr)};
  } catch (const Json::exception& e) {
    return {400, error_body("SchemaViolation", e.what(), nullptr)};
  } catch (const std::exception& e) {
    return {500, error_body("InternalError", e.what(), nullptr)};
  }
}

ApiResponse handle_body(const std::string& op, const std::string& body, const Deadline& deadline) {
  Json params = Json::object();
  if (!body.empty()) {
    params = Json::parse(body, nullptr, false);
    if (params.is_discarded()) return {400, error_body("SchemaViolation", "request body is not valid JSON", nullptr)};
  }
  return handle(op, params, deadline);
}

std::string dump(const Json& body) { return body.dump(); }

}  // namespace blockade
