#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "blockade/service.hpp"
#include "blockade/svg.hpp"

using namespace blockade;

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("SchemaViolation", "cannot read " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error("SchemaViolation", path + " is not valid JSON");
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("IoError", "cannot write " + path);
  out << text;
}

Scene scene_from_json(const Json& j) {
  Scene s;
  s.P = point_set_from_json(j.contains("P") ? j["P"] : j);
  if (j.contains("circles")) s.circles = circle_family_from_json(j["circles"]);
  if (j.contains("Q")) s.Q = point_set_from_json(j["Q"]);
  if (j.contains("hull")) s.hull = j["hull"].get<bool>();
  if (j.contains("edges")) s.edges = j["edges"].get<bool>();
  return s;
}

int exit_code(int status) {
  switch (status) {
    case 400: return 2;
    case 422: return 3;
    case 503: return 4;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact blocking sets of Delaunay triangulations"};
  app.require_subcommand(1);

  Json params = Json::object();
  std::string op;
  std::string svg_path;
  std::string output_path;
  std::string input_path;
  std::string polys_path;

  auto* construct = app.add_subcommand("construct", "Build a construction (p0, c0prime, alt3k)");
  std::string kind;
  int k = 1;
  std::string tau;
  construct->add_option("kind", kind, "p0 | c0prime | alt3k")->required();
  construct->add_option("--k", k, "number of gadgets")->required();
  construct->add_option("--tau", tau, "perturbation for c0prime, rational or 'auto'");
  construct->add_option("--svg", svg_path, "also render to this SVG file");

  auto* certify = app.add_subcommand("certify", "Certify a perturbation tau* for the general-position family");
  std::string start_tau;
  int max_halvings = 96;
  certify->add_option("--k", k)->required();
  certify->add_option("--start-tau", start_tau, "resume from this tau");
  certify->add_option("--max-halvings", max_halvings);
  certify->add_option("--emit-polys", polys_path, "write every tau polynomial to this JSON file");

  auto* certify_lb = app.add_subcommand("certify-lb", "Lower-bound certificate for a construction");
  std::string construction;
  std::string method = "hitting_set";
  bool explain = false;
  std::size_t cell_cap = 20000;
  certify_lb->add_option("--construction", construction, "collinear | general | alt3k")->required();
  certify_lb->add_option("--k", k)->required();
  certify_lb->add_option("--tau", tau, "rational or 'auto' (general only)");
  certify_lb->add_option("--method", method, "hitting_set | disjointness");
  certify_lb->add_option("--cell-cap", cell_cap);
  certify_lb->add_flag("--explain", explain, "per-group bounds, overlap graph and cells");

  auto* solve = app.add_subcommand("solve", "Find a blocking set for a point set");
  bool exterior = false;
  std::uint64_t seed = 1;
  int budget = 200;
  int density = 4;
  std::string strategy = "greedy";
  solve->add_option("--input", input_path, "PointSet JSON")->required();
  solve->add_flag("--exterior", exterior, "blockers must lie outside the hull");
  solve->add_option("--seed", seed);
  solve->add_option("--budget", budget, "maximum greedy rounds");
  solve->add_option("--density", density, "candidate density");
  solve->add_option("--strategy", strategy, "auto | midpoint | greedy | exhaustive");

  auto* probe = app.add_subcommand("probe", "Try to block a regular n-gon with n points");
  int ngon = 5;
  probe->add_option("--ngon", ngon)->required();
  probe->add_option("--budget", budget, "greedy attempts")->default_val(8);
  probe->add_flag("--exterior", exterior);

  auto* render = app.add_subcommand("render", "Render a scene JSON (points, circles, optional Q) to SVG");
  bool edges = false;
  render->add_option("--input", input_path)->required();
  render->add_option("--output", output_path, "SVG file (stdout when omitted)");
  render->add_flag("--edges", edges, "draw Delaunay edges");

  auto* blocks_cmd = app.add_subcommand("blocks", "Check a BlockingInstance JSON");
  blocks_cmd->add_option("--input", input_path)->required();

  auto* delaunay = app.add_subcommand("delaunay", "Delaunay graph and witness intervals of a PointSet JSON");
  delaunay->add_option("--input", input_path)->required();

  auto* serve_cmd = app.add_subcommand("serve", "HTTP/JSON service");
  ServeOptions serve_opts;
  std::string static_dir;
  serve_cmd->add_option("--port", serve_opts.port);
  serve_cmd->add_option("--host", serve_opts.host);
  serve_cmd->add_option("--static", static_dir, "directory served at /");

  CLI11_PARSE(app, argc, argv);

  try {
    const Deadline deadline(time_budget_from_env());
    if (construct->parsed()) {
      op = "construct";
      params = {{"kind", kind}, {"k", k}};
      if (!tau.empty()) params["tau"] = tau;
    } else if (certify->parsed()) {
      op = "certify-epsilon";
      params = {{"k", k}, {"max_halvings", max_halvings}};
      if (!start_tau.empty()) params["start_tau"] = start_tau;
    } else if (certify_lb->parsed()) {
      op = "certify-lb";
      params = {{"construction", construction}, {"k", k}, {"method", method}, {"explain", explain}, {"cell_cap", cell_cap}};
      if (!tau.empty()) params["tau"] = tau;
    } else if (solve->parsed()) {
      op = "solve";
      params = {{"P", read_json_file(input_path)}, {"exterior_only", exterior}, {"seed", seed},
                {"max_rounds", budget},            {"candidate_density", density}, {"strategy", strategy}};
    } else if (probe->parsed()) {
      op = "probe";
      params = {{"ngon", ngon}, {"budget", budget}, {"exterior_only", exterior}};
    } else if (blocks_cmd->parsed()) {
      op = "blocks";
      params = read_json_file(input_path);
    } else if (delaunay->parsed()) {
      op = "delaunay";
      params = read_json_file(input_path);
    } else if (render->parsed()) {
      Scene scene = scene_from_json(read_json_file(input_path));
      scene.edges = scene.edges || edges;
      const std::string svg = render_svg(scene);
      if (output_path.empty()) {
        std::cout << svg;
      } else {
        write_file(output_path, svg);
      }
      return 0;
    } else if (serve_cmd->parsed()) {
      if (!static_dir.empty()) serve_opts.static_dir = static_dir;
      serve_opts.time_budget_ms = time_budget_from_env();
      serve(serve_opts);
      return 0;
    }

    if (!polys_path.empty()) {
      Json polys = Json::array();
      for_each_tau_polynomial(build_p0(k).gadgets, [&](const TauPolynomial& p) { polys.push_back(to_json(p)); });
      write_file(polys_path, polys.dump() + "\n");
    }

    const ApiResponse r = handle(op, params, deadline);
    if (r.status != 200) {
      std::cerr << r.body["error"].dump(2) << '\n';
      return exit_code(r.status);
    }
    const Json& result = r.body["result"];
    if (!svg_path.empty()) {
      Scene scene;
      scene.P = point_set_from_json(result);
      scene.circles = circle_family_from_json(result);
      write_file(svg_path, render_svg(scene));
    }
    std::cout << result.dump(2) << '\n';
  } catch (const Error& e) {
    std::cerr << Json{{"code", e.code()}, {"message", e.what()}}.dump(2) << '\n';
    return e.code() == "SchemaViolation" ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
