#include <doctest.h>

#include <random>
#include <set>

#include "blockade/perturbation.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace blockade;
using blockade::testing::R;
using blockade::testing::det;
using blockade::testing::frac;

namespace {

SigmaPoint sp(Rational x, Rational y, int sigma, std::size_t index = 0) { return {{x, y}, sigma, index}; }

Point lifted(const SigmaPoint& s, const Rational& tau) { return {s.p.x, s.p.y + s.sigma * tau * s.p.x * s.p.x * s.p.x}; }

Rational cocircular_det(const std::vector<Point>& p) {
  std::vector<std::vector<Rational>> m(4, std::vector<Rational>(4));
  for (std::size_t i = 0; i < 4; ++i) {
    m[0][i] = 1;
    m[1][i] = p[i].x;
    m[2][i] = p[i].y;
    m[3][i] = p[i].x * p[i].x + p[i].y * p[i].y;
  }
  return det(m);
}

std::vector<Rational> distinct_positive(std::mt19937_64& rng, std::size_t n) {
  std::set<Rational> seen;
  std::vector<Rational> out;
  while (out.size() < n) {
    const Rational q = frac(1 + static_cast<long>(rng() % 400), 1 + static_cast<long>(rng() % 17));
    if (seen.insert(q).second) out.push_back(q);
  }
  return out;
}

}  // namespace

TEST_SUITE("perturbation-certifier") {

TEST_CASE("polynomial arithmetic and Sturm counting") {
  const Polynomial p({-2, 0, 1});  // tau^2 - 2
  CHECK(p.degree() == 2);
  CHECK(count_roots_between(p, 0, 2) == 1);
  CHECK(count_roots_between(p, -2, 2) == 2);
  CHECK(count_roots_between(p, R("3/2"), 2) == 0);
  const Polynomial q({-1, 1});
  CHECK((p * q).degree() == 3);
  CHECK(((p * q).remainder(q)).is_zero());
  CHECK(p.derivative().coeffs() == std::vector<Rational>{0, 2});
}

TEST_CASE("collinearity_poly examples") {
  const auto b = collinearity_poly(sp(9, 0, 1), sp(10, 0, 1), sp(11, 0, 1));
  CHECK(b.coeffs[0] == 0);
  CHECK(b.coeffs[1] == 60);
  CHECK(vandermonde_b(9, 10, 11) == 60);
  const auto a = collinearity_poly(sp(9, 0, 1), sp(10, 0, 1), sp(10, R("3/2"), -1));
  CHECK(a.coeffs[0] == R("3/2"));
  CHECK(vandermonde_b(9, 9, 11) == 0);
}

TEST_CASE("cocircularity_poly examples") {
  const auto line = cocircularity_poly(sp(9, 0, 1), sp(10, 0, 1), sp(11, 0, 1), sp(13, 0, 1));
  CHECK(line.coeffs[0] == 0);
  CHECK(line.coeffs[3] != 0);
  CHECK(line.coeffs[3] == vandermonde_d(9, 10, 11, 13));
  // Splitting a square into a +1 bottom pair and a -1 top pair keeps it an
  // isosceles trapezoid, so one corner carries the other sign.
  const auto split = cocircularity_poly(sp(0, 0, 1), sp(1, 0, 1), sp(1, 1, -1), sp(0, 1, -1));
  CHECK(split.identically_zero());
  const auto square = cocircularity_poly(sp(1, 1, 1), sp(2, 1, 1), sp(2, 2, -1), sp(1, 2, 1));
  CHECK(square.coeffs[0] == 0);
  CHECK_FALSE(square.identically_zero());
}

TEST_CASE("B identity on construction triples and random inputs") {
  int mismatches = 0;
  auto check = [&](const Rational& p, const Rational& q, const Rational& r) {
    const Rational direct = det({{1, 1, 1}, {p, q, r}, {p * p * p, q * q * q, r * r * r}});
    if (direct != vandermonde_b(p, q, r)) ++mismatches;
    if (collinearity_poly(sp(p, 0, 1), sp(q, 0, 1), sp(r, 0, 1)).coeffs[1] != direct) ++mismatches;
  };
  for (int k = 1; k <= 5; ++k) {
    std::vector<Rational> xs;
    for (const auto& g : build_p0(k).gadgets) xs.insert(xs.end(), {g.ell.x, g.m.x, g.r.x});
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = a + 1; b < xs.size(); ++b)
        for (std::size_t c = b + 1; c < xs.size(); ++c) check(xs[a], xs[b], xs[c]);
  }
  std::mt19937_64 rng(31);
  for (int it = 0; it < 1000; ++it) {
    const auto xs = distinct_positive(rng, 3);
    check(xs[0], xs[1], xs[2]);
  }
  CHECK(mismatches == 0);
}

TEST_CASE("D identity, and sign flip for sigma = -1") {
  std::mt19937_64 rng(37);
  int mismatches = 0;
  for (int it = 0; it < 300; ++it) {
    const auto x = distinct_positive(rng, 4);
    std::vector<std::vector<Rational>> m(4, std::vector<Rational>(4));
    for (std::size_t i = 0; i < 4; ++i) {
      const Rational c = x[i] * x[i] * x[i];
      m[0][i] = 1;
      m[1][i] = x[i];
      m[2][i] = c;
      m[3][i] = c * c;
    }
    const Rational direct = det(m);
    if (direct != vandermonde_d(x[0], x[1], x[2], x[3])) ++mismatches;
    const auto up = cocircularity_poly(sp(x[0], 0, 1), sp(x[1], 0, 1), sp(x[2], 0, 1), sp(x[3], 0, 1));
    const auto down = cocircularity_poly(sp(x[0], 0, -1), sp(x[1], 0, -1), sp(x[2], 0, -1), sp(x[3], 0, -1));
    if (up.coeffs[3] != direct || down.coeffs[3] != -direct) ++mismatches;
  }
  CHECK(mismatches == 0);
  CHECK(complete_homogeneous(2, {1, 2}) == 7);  // 1 + 2 + 4
}

TEST_CASE("symbolic polynomials agree with perturbed-point determinants") {
  std::mt19937_64 rng(41);
  const auto pts = sigma_points(build_p0(3).gadgets);
  for (int it = 0; it < 100; ++it) {
    const Rational tau = frac(1 + static_cast<long>(rng() % 50), 1 + static_cast<long>(rng() % 5000));
    std::vector<std::size_t> idx;
    while (idx.size() < 4) {
      const std::size_t i = rng() % pts.size();
      if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
    }
    const auto& p = pts[idx[0]];
    const auto& q = pts[idx[1]];
    const auto& r = pts[idx[2]];
    const auto& s = pts[idx[3]];
    CHECK(collinearity_poly(p, q, r)(tau) == orient_value(lifted(p, tau), lifted(q, tau), lifted(r, tau)));
    CHECK(cocircularity_poly(p, q, r, s)(tau) ==
          cocircular_det({lifted(p, tau), lifted(q, tau), lifted(r, tau), lifted(s, tau)}));
  }
}

TEST_CASE("positive_root_bound examples") {
  TauPolynomial linear;
  linear.coeffs = {0, 60, 0, 0};
  CHECK(positive_root_bound(std::vector<TauPolynomial>{linear}) == 1);
  TauPolynomial shifted;
  shifted.coeffs = {-1, 2, 0, 0};
  const Rational b = positive_root_bound(std::vector<TauPolynomial>{shifted});
  CHECK(b > 0);
  CHECK(b < R("1/2"));
  TauPolynomial zero;
  CHECK_THROWS_AS(positive_root_bound(std::vector<TauPolynomial>{zero}), Error);
  CHECK_FALSE(positive_root_bound(Polynomial({1, 1})).has_value());
}

TEST_CASE("root bound for k = 3 holds on every polynomial") {
  const auto gadgets = build_p0(3).gadgets;
  const auto polys = all_tau_polynomials(gadgets);
  CHECK(polys.size() == 220 + 495);
  const Rational b = positive_root_bound(polys);
  REQUIRE(b > 0);
  int bad = 0;
  for (const auto& p : polys) {
    const Polynomial q = p.poly();
    if (q(b) == 0 || q(b / 2) == 0) ++bad;
    // the sign at b and b/2 matches the sign just above 0
    if (!q.is_zero()) {
      Polynomial stripped = q;
      std::size_t lead = 0;
      while (stripped.coeff(lead) == 0) ++lead;
      const int s0 = sgn(q.coeff(lead));
      if (sgn(q(b)) != s0 || sgn(q(b / 2)) != s0) ++bad;
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("five-case audit of the collinear construction") {
  // Every cocircular quadruple of P0 lies on the bottom line or the top
  // line; none mixes two bottom and two top points.
  for (int k = 1; k <= 5; ++k) CHECK(five_case_audit(build_p0(k).gadgets).empty());
}

TEST_CASE("five-case audit classifies a mixed quadruple") {
  // (0,0), (4,0), (1,3), (3,3) lie on the circle centered (2,1).
  const std::vector<Gadget> gadgets{
      {1, {0, 0}, {testing::frac(1, 7), 0}, {testing::frac(1, 5), 0}, {1, 3}},
      {2, {4, 0}, {5, 0}, {6, 0}, {3, 3}},
  };
  const auto records = five_case_audit(gadgets);
  REQUIRE(records.size() == 1);
  CHECK(records[0].order == CocircularCase::kPRSQ);
  CHECK(records[0].tuple == std::array<std::size_t, 4>{0, 4, 3, 7});
  CHECK(records[0].distinct_triple);
  CHECK(records[0].nonvanishing);
}

TEST_CASE("certify_epsilon for k = 2") {
  const auto cert = certify_epsilon(2);
  CHECK(cert.tau_star > 0);
  CHECK(cert.tau_star < cert.positive_root_bound);
  for (const auto& a : cert.audits) CHECK_MESSAGE(a.passed, a.id << ": " << a.detail);
  const auto ids = cert.audited_conditions();
  CHECK(std::find(ids.begin(), ids.end(), "general_position") != ids.end());

  const auto pts = perturb(build_p0(2).gadgets, cert.tau_star).points.points;
  CHECK(convex_hull(pts).vertices.size() == 8);
  int degenerate = 0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      for (std::size_t c = b + 1; c < pts.size(); ++c) {
        if (orient(pts[a], pts[b], pts[c]) == 0) ++degenerate;
        for (std::size_t d = c + 1; d < pts.size(); ++d) {
          const bool ccw = orient(pts[a], pts[b], pts[c]) > 0;
          if (testing::incircle(pts[a], ccw ? pts[b] : pts[c], ccw ? pts[c] : pts[b], pts[d]) == 0) ++degenerate;
        }
      }
  CHECK(degenerate == 0);

  const auto again = certify_epsilon(2);
  CHECK(again.tau_star == cert.tau_star);
  CHECK(again.halvings == cert.halvings);
}

TEST_CASE("a huge tau fails an audit") {
  const auto audits = audit_perturbation(build_p0(2).gadgets, 1);
  CHECK(std::any_of(audits.begin(), audits.end(), [](const AuditResult& a) { return !a.passed; }));
}

TEST_CASE("certify_epsilon honours the stop hook and resumes") {
  EpsilonOptions opts;
  opts.should_stop = [] { return true; };
  try {
    certify_epsilon(2, opts);
    FAIL("expected TimeBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == "TimeBudgetExceeded");
    const std::string msg = e.what();
    REQUIRE(msg.rfind("resume_tau=", 0) == 0);
    EpsilonOptions resume;
    resume.start_tau = parse_rational(msg.substr(11));
    CHECK(certify_epsilon(2, resume).tau_star == certify_epsilon(2).tau_star);
  }
  CHECK_THROWS_AS(certify_epsilon(1), Error);
}

}
