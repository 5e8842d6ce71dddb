// One PASS/FAIL line per primary criterion. `--only <id>` runs a single one.
#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "blockade/perturbation.hpp"
#include "blockade/service.hpp"
#include "necessity_guard.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace blockade;
using blockade::testing::det;
using blockade::testing::frac;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << v;
  return os.str();
}

Outcome collinear_bound() {
  std::ostringstream d;
  bool ok = true;
  for (int k = 1; k <= 8; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const Json r = run_op("certify-lb", {{"construction", "collinear"}, {"k", k}});
    const double s = seconds_since(t0);
    const std::size_t bound = r["bound"].get<std::size_t>();
    const bool good = bound == static_cast<std::size_t>(5 * k - 3) && s < 10;
    ok = ok && good;
    d << (k > 1 ? " " : "") << "k=" << k << ":" << bound << (good ? "" : "(expected " + std::to_string(5 * k - 3) + ")")
      << "/" << fixed(s) << "s";
  }
  return {ok, d.str()};
}

/// Independent general-position check: orientation and incircle determinants
/// over every triple and quadruple, and hull vertex count.
std::string general_position_report(const std::vector<Point>& pts, bool& ok) {
  std::size_t collinear = 0, cocircular = 0;
  const std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        const int o = orient(pts[a], pts[b], pts[c]);
        if (o == 0) {
          ++collinear;
          continue;
        }
        for (std::size_t e = c + 1; e < n; ++e) {
          if (testing::incircle(pts[a], o > 0 ? pts[b] : pts[c], o > 0 ? pts[c] : pts[b], pts[e]) == 0) ++cocircular;
        }
      }
  const auto hull = convex_hull(pts);
  ok = collinear == 0 && cocircular == 0 && hull.vertices.size() == n;
  return std::to_string(collinear) + " collinear, " + std::to_string(cocircular) + " cocircular, " +
         std::to_string(hull.vertices.size()) + "/" + std::to_string(n) + " hull vertices";
}

Outcome general_position_bound() {
  std::ostringstream d;
  bool ok = true;
  for (int k = 2; k <= 5; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cert = certify_epsilon(k);
    bool audits = true;
    for (const auto& a : cert.audits) audits = audits && a.passed;
    const auto base = build_p0(k).gadgets;
    const auto pts = perturb(base, cert.tau_star).points;
    bool gp = false;
    const std::string gp_text = general_position_report(pts.points, gp);
    const auto lb = hitting_set_bound(pts, build_c0_prime(base, cert.tau_star));
    const double s = seconds_since(t0);
    const bool good = audits && gp && lb.bound >= static_cast<std::size_t>(5 * k - 5) && s < 300;
    ok = ok && good;
    d << (k > 2 ? "; " : "") << "k=" << k << " tau*=" << to_string(cert.tau_star) << " bound=" << lb.bound
      << " (need " << 5 * k - 5 << "), " << gp_text << ", audits " << (audits ? "ok" : "FAILED") << ", " << fixed(s)
      << "s";
  }
  return {ok, d.str()};
}

Outcome alt3k_bound() {
  std::ostringstream d;
  bool ok = true;
  for (int k = 1; k <= 8; ++k) {
    const Json r = run_op("certify-lb", {{"construction", "alt3k"}, {"k", k}});
    const std::size_t bound = r["bound"].get<std::size_t>();
    const bool good = bound == static_cast<std::size_t>(4 * k - 2);
    ok = ok && good;
    d << (k > 1 ? " " : "") << "k=" << k << ":" << bound << "/" << 4 * k - 2;
  }
  return {ok, d.str() + " (certified/claimed)"};
}

Outcome vandermonde_identities() {
  std::size_t checked = 0, mismatches = 0;
  auto b_direct = [](const Rational& p, const Rational& q, const Rational& r) {
    return det({{1, 1, 1}, {p, q, r}, {p * p * p, q * q * q, r * r * r}});
  };
  auto d_direct = [](const std::vector<Rational>& x) {
    std::vector<std::vector<Rational>> m(4, std::vector<Rational>(4));
    for (std::size_t i = 0; i < 4; ++i) {
      const Rational c = x[i] * x[i] * x[i];
      m[0][i] = 1, m[1][i] = x[i], m[2][i] = c, m[3][i] = c * c;
    }
    return det(m);
  };
  auto check_b = [&](const Rational& p, const Rational& q, const Rational& r) {
    ++checked;
    if (vandermonde_b(p, q, r) != b_direct(p, q, r)) ++mismatches;
  };
  auto check_d = [&](const std::vector<Rational>& x) {
    ++checked;
    if (vandermonde_d(x[0], x[1], x[2], x[3]) != d_direct(x)) ++mismatches;
  };
  for (int k = 1; k <= 4; ++k) {
    std::vector<Rational> xs;
    for (const auto& g : build_p0(k).gadgets) xs.insert(xs.end(), {g.ell.x, g.m.x, g.r.x});
    const std::size_t n = xs.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) {
          check_b(xs[a], xs[b], xs[c]);
          for (std::size_t e = c + 1; e < n; ++e) check_d({xs[a], xs[b], xs[c], xs[e]});
        }
    // the symbolic leading coefficients of the construction's own polynomials
    for_each_tau_polynomial(build_p0(k).gadgets, [&](const TauPolynomial& p) {
      if (p.kind != TauPolynomial::Kind::kCocircularity || p.witness.size() != 4) return;
      const auto sp = sigma_points(build_p0(k).gadgets);
      int sigma = 0;
      std::vector<Rational> x;
      for (auto i : p.witness) sigma += sp[i].sigma, x.push_back(sp[i].p.x);
      if (sigma != 4 && sigma != -4) return;
      ++checked;
      if (p.coeffs[3] != (sigma > 0 ? 1 : -1) * d_direct(x)) ++mismatches;
    });
  }
  std::mt19937_64 rng(1000);
  auto draw = [&](std::size_t n) {
    std::set<Rational> seen;
    std::vector<Rational> out;
    while (out.size() < n) {
      const Rational q = frac(1 + static_cast<long>(rng() % 1000), 1 + static_cast<long>(rng() % 97));
      if (seen.insert(q).second) out.push_back(q);
    }
    return out;
  };
  for (int it = 0; it < 1000; ++it) {
    const auto t = draw(3);
    check_b(t[0], t[1], t[2]);
    check_d(draw(4));
  }
  return {mismatches == 0, std::to_string(checked) + " identities checked, " + std::to_string(mismatches) + " mismatches"};
}

Outcome delaunay_oracle() {
  std::mt19937_64 rng(500);
  std::size_t mismatches = 0, cocircular = 0, collinear = 0;
  for (int it = 0; it < 500; ++it) {
    const auto pts = testing::random_test_set(rng, it);
    if (it % 3 == 0) ++cocircular;
    else if (it % 5 == 0) ++collinear;
    PointSet s;
    for (const auto& p : pts) s.add(p);
    if (testing::normalized(delaunay_edges(s)) != testing::oracle_edges(pts)) ++mismatches;
  }
  return {mismatches == 0, "500 sets (" + std::to_string(cocircular) + " forced cocircular, " + std::to_string(collinear) +
                               " forced collinear), " + std::to_string(mismatches) + " mismatches"};
}

Outcome midpoint_polygons() {
  std::ostringstream d;
  bool five = false;
  std::size_t passed = 0;
  for (int n = 4; n <= 12; ++n) {
    const auto P = regular_polygon(n);
    const auto Q = midpoint_heuristic(P, Rational(1, 100));
    const bool ok = Q.size() == static_cast<std::size_t>(n) && blocks({P, Q, true}).blocked();
    if (ok) ++passed;
    if (n == 5) five = ok;
    d << (n > 4 ? " " : "") << n << (ok ? ":blocked" : ":unblocked");
  }
  return {five && passed == 9, d.str()};
}

Outcome solver_soundness() {
  std::ostringstream d;
  bool ok = true;
  {
    const auto p0 = build_p0(2);
    SolverConfig cfg;
    cfg.exterior_only = true;
    const auto r = greedy_cover_solve(p0.points, cfg);
    const bool good = r.verified && r.size >= 7;
    ok = ok && good;
    d << "greedy exterior P0 k=2: size " << r.size << (r.verified ? " verified" : " unverified");
  }
  struct Case {
    std::string name;
    PointSet P;
    CircleFamily circles;
  };
  std::vector<Case> cases;
  {
    auto p0 = build_p0(1);
    cases.push_back({"P0 k=1", p0.points, build_c0(p0.gadgets)});
    auto a1 = build_alt_3k(1);
    cases.push_back({"alt3k k=1", a1.points, a1.circles});
    auto a2 = build_alt_3k(2);
    cases.push_back({"alt3k k=2", a2.points, a2.circles});
  }
  for (const auto& c : cases) {
    const std::size_t bound = hitting_set_bound(c.P, c.circles).bound;
    const auto ex = exhaustive_minimal(c.P, true, bound, 2 * c.P.size(), 400000);
    d << "; " << c.name << ": certificate " << bound << ", exhaustive ";
    if (ex.Q) {
      d << ex.size << (ex.size == bound ? " (match)" : " (mismatch)");
      ok = ok && ex.size == bound;
      if (ex.size < bound) d << " CONTRADICTION";
    } else {
      d << "undecided after " << ex.nodes << " nodes";
    }
  }
  return {ok, d.str()};
}

/// Blocked instances produced by the solvers and the verifier over a mixed
/// corpus; the guard checks each one as blocks() reports it.
Outcome necessity_guard() {
  auto& guard = testing::NecessityGuard::instance();
  for (int n = 3; n <= 12; ++n) {
    const auto P = regular_polygon(n);
    blocks({P, midpoint_heuristic(P, Rational(1, 100)), true});
  }
  for (int n = 5; n <= 9; ++n) conjecture_probe(regular_polygon(n), 4);
  std::mt19937_64 rng(77);
  for (int it = 0; it < 12; ++it) {
    PointSet P;
    for (const auto& p : testing::random_test_set(rng, 1 + 3 * it)) P.add(p);
    if (P.size() > 7) continue;
    SolverConfig cfg;
    cfg.seed = it + 1;
    greedy_cover_solve(P, cfg);
  }
  for (int k = 1; k <= 2; ++k) {
    SolverConfig cfg;
    cfg.exterior_only = true;
    greedy_cover_solve(build_p0(k).points, cfg);
    greedy_cover_solve(build_alt_3k(k).points, cfg);
  }
  exhaustive_minimal(regular_polygon(4), false, 1, 6);
  exhaustive_minimal(build_p0(1).points, true, 1, 6);
  const bool ok = guard.violations.empty() && guard.checked > 0;
  std::string detail = std::to_string(guard.checked) + " blocked instances checked, " +
                       std::to_string(guard.violations.size()) + " with |Q| < |P|";
  if (guard.exempt) detail += ", " + std::to_string(guard.exempt) + " chord-blocked exempt";
  for (const auto& v : guard.violations) detail += "; " + v;
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  testing::NecessityGuard::instance().install();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"collinear-5k-3", collinear_bound},
      {"general-position-5k-5", general_position_bound},
      {"three-per-gadget-4k-2", alt3k_bound},
      {"vandermonde-identities", vandermonde_identities},
      {"delaunay-oracle", delaunay_oracle},
      {"necessity-guard", necessity_guard},
      {"midpoint-polygons", midpoint_polygons},
      {"solver-soundness", solver_soundness},
  };
  std::string only;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0) only = argv[i + 1];
  }
  int failures = 0;
  bool ran = false;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && id != only) continue;
    ran = true;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << id << ": " << o.detail << std::endl;
  }
  if (!ran) {
    std::cerr << "unknown criterion " << only << '\n';
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
