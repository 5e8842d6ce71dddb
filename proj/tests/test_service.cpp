#include <doctest.h>
#include <httplib.h>

#include <random>
#include <thread>

#include "blockade/service.hpp"
#include "blockade/svg.hpp"
#include "test_util.hpp"

using namespace blockade;
using blockade::testing::R;

namespace {

const Json kTwoPointInstance = Json::parse(R"({
  "P": {"points": [{"x": "0/1", "y": "0/1"}, {"x": "1/1", "y": "0/1"}]},
  "Q": {"points": [{"x": "1/2", "y": "1/10"}, {"x": "1/2", "y": "-1/10"}]}
})");

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("cli-service") {

TEST_CASE("PointSet JSON round trip is exact") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    PointSet s;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      s.add({testing::frac(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 977)),
             testing::frac(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 977))},
            it % 2 ? "p" + std::to_string(i) : "");
    }
    const PointSet back = point_set_from_json(Json::parse(to_json(s).dump()));
    CHECK(back.points == s.points);
    for (int i = 0; i < n; ++i) CHECK(back.label(i) == s.label(i));
  }
  CHECK(to_json(Point{9, 0}) == Json{{"x", "9/1"}, {"y", "0/1"}});
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(point_set_from_json(Json::parse(R"({"points":[{"x":"1/0","y":"0"}]})")), Error);
  CHECK_THROWS_AS(point_set_from_json(Json::parse(R"({"points":[{"x":1.5,"y":"0"}]})")), Error);
  CHECK_THROWS_AS(point_set_from_json(Json::parse(R"({"pts":[]})")), Error);
}

TEST_CASE("construct p0 k = 1") {
  const auto r = handle("construct", {{"kind", "p0"}, {"k", 1}});
  REQUIRE(r.status == 200);
  const Json& pts = r.body["result"]["points"];
  REQUIRE(pts.size() == 4);
  CHECK(pts[0] == Json{{"x", "9/1"}, {"y", "0/1"}, {"label", "ell_1"}});
  CHECK(r.body["result"]["circles"].size() == 4);
}

TEST_CASE("blocks and delaunay") {
  const auto r = handle("blocks", kTwoPointInstance);
  REQUIRE(r.status == 200);
  CHECK(r.body["ok"] == true);
  CHECK(r.body["result"]["verdict"] == "blocked");

  Json half = kTwoPointInstance;
  half["Q"]["points"].erase(1);
  const auto u = handle("blocks", half);
  CHECK(u.body["result"]["verdict"] == "unblocked");
  CHECK(u.body["result"]["unblocked"] == Json::parse("[[0,1]]"));

  const auto d = handle("delaunay", kTwoPointInstance["P"]);
  REQUIRE(d.status == 200);
  CHECK(d.body["result"]["edges"] == Json::parse("[[0,1]]"));
  CHECK(d.body["result"]["witness_intervals"][0]["lo"].is_null());
}

TEST_CASE("health") { CHECK(handle("health", Json::object()).body == Json{{"ok", true}}); }

TEST_CASE("error status codes") {
  CHECK(handle("construct", {{"kind", "p0"}}).status == 400);
  CHECK(handle("construct", {{"kind", "square"}, {"k", 1}}).status == 400);
  CHECK(handle("nope", Json::object()).status == 400);
  CHECK(handle_body("blocks", "{not json").status == 400);
  const auto dup = handle("delaunay", Json::parse(R"({"points":[{"x":"0","y":"0"},{"x":"0/1","y":"0/3"}]})"));
  CHECK(dup.status == 422);
  CHECK(dup.body["error"]["code"] == "IdenticalPoints");
  CHECK(handle("construct", {{"kind", "c0prime"}, {"k", 1}, {"tau", "0"}}).status == 422);
  CHECK(handle("certify-epsilon", {{"k", 1}}).status == 422);
}

TEST_CASE("time budget returns a resume cursor") {
  Deadline spent(1);
  std::this_thread::sleep_for(std::chrono::milliseconds(5));
  const auto r = handle("certify-epsilon", {{"k", 3}}, spent);
  REQUIRE(r.status == 503);
  CHECK(r.body["error"]["code"] == "TimeBudgetExceeded");
  const Json cursor = r.body["error"]["detail"]["resume_tau"];
  REQUIRE(cursor.is_string());
  const auto resumed = handle("certify-epsilon", {{"k", 3}, {"start_tau", cursor}});
  REQUIRE(resumed.status == 200);
  CHECK(resumed.body["result"]["tau_star"] == handle("certify-epsilon", {{"k", 3}}).body["result"]["tau_star"]);
}

TEST_CASE("certify-lb through the API") {
  const auto r = handle("certify-lb", {{"construction", "collinear"}, {"k", 2}, {"explain", true}});
  REQUIRE(r.status == 200);
  CHECK(r.body["result"]["bound"] == 7);
  CHECK(r.body["result"].contains("groups"));
  CHECK(r.body["result"].contains("overlap_graph"));

  const auto custom = handle("certify-lb", {{"P", handle("construct", {{"kind", "p0"}, {"k", 1}}).body["result"]},
                                            {"circles", handle("construct", {{"kind", "p0"}, {"k", 1}}).body["result"]["circles"]},
                                            {"method", "disjointness"}});
  REQUIRE(custom.status == 200);
  CHECK(custom.body["result"]["bound"] == 2);
}

TEST_CASE("solve suggests the midpoint blockers for a pentagon") {
  const Json P = to_json(regular_polygon(5));
  const auto r = handle("solve", {{"P", P}});
  REQUIRE(r.status == 200);
  CHECK(r.body["result"]["strategy"] == "midpoint");
  CHECK(r.body["result"]["verified"] == true);
  CHECK(r.body["result"]["points"].size() == 5);
  const auto g = handle("solve", {{"P", P}, {"strategy", "greedy"}, {"seed", 3}});
  CHECK(dump(g.body) == dump(handle("solve", {{"P", P}, {"strategy", "greedy"}, {"seed", 3}}).body));
}

TEST_CASE("responses are byte-identical across runs") {
  const std::vector<std::pair<std::string, Json>> requests = {
      {"construct", {{"kind", "alt3k"}, {"k", 3}}},
      {"certify-lb", {{"construction", "alt3k"}, {"k", 2}, {"explain", true}}},
      {"certify-epsilon", {{"k", 2}}},
      {"blocks", kTwoPointInstance},
  };
  for (const auto& [op, params] : requests) CHECK(dump(handle(op, params).body) == dump(handle(op, params).body));
}

TEST_CASE("HTTP routes") {
  ServeOptions opts;
  opts.port = 0;
  Server server(opts);
  const int port = server.bind();
  std::thread worker([&] { server.listen(); });

  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(60, 0);
  auto health = client.Get("/api/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(Json::parse(health->body) == Json{{"ok", true}});

  for (const std::string prefix : {"/api/", "/api/v1/"}) {
    auto c = client.Post(prefix + "construct", R"({"kind":"p0","k":1})", "application/json");
    REQUIRE(c);
    CHECK(c->status == 200);
    CHECK(Json::parse(c->body)["result"]["points"][0]["x"] == "9/1");

    auto b = client.Post(prefix + "blocks", kTwoPointInstance.dump(), "application/json");
    REQUIRE(b);
    CHECK(Json::parse(b->body)["result"]["verdict"] == "blocked");
  }
  auto bad = client.Post("/api/blocks", "[1,2", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  auto domain = client.Post("/api/construct", R"({"kind":"p0","k":0})", "application/json");
  REQUIRE(domain);
  CHECK(domain->status == 422);
  auto solve = client.Post("/api/solve", Json{{"P", to_json(regular_polygon(5))}}.dump(), "application/json");
  REQUIRE(solve);
  CHECK(Json::parse(solve->body)["result"]["verified"] == true);

  server.stop();
  worker.join();
}

TEST_CASE("svg rendering") {
  Scene empty;
  empty.P = build_p0(1).points;
  const std::string points_only = render_svg(empty);
  CHECK(count(points_only, "class=\"witness\"") == 0);
  CHECK(count(points_only, "class=\"P\"") == 4);

  const auto p0 = build_p0(3);
  Scene scene{p0.points, build_c0(p0.gadgets), std::nullopt, true, false};
  const std::string svg = render_svg(scene);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, "class=\"witness\"") == 14);
  CHECK(count(svg, "class=\"P\"") == 12);
  CHECK(svg == render_svg(scene));

  const auto alt = build_alt_3k(3);
  Scene fig{alt.points, alt.circles, alt.points, true, true};
  const std::string s3 = render_svg(fig);
  CHECK(count(s3, "class=\"P\"") == 9);
  CHECK(count(s3, "class=\"Q\"") == 9);
  CHECK(count(s3, "data-name=\"I2^") == 3);
}

}
