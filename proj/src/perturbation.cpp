#include "blockade/perturbation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "blockade/lower_bound.hpp"

namespace blockade {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::remainder(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw Error("DivisionByZero", "polynomial division by zero");
  std::vector<Rational> r = coeffs_;
  const int dd = divisor.degree();
  const Rational& lead = divisor.coeffs_.back();
  for (int i = static_cast<int>(r.size()) - 1; i >= dd; --i) {
    if (r[i] == 0) continue;
    const Rational f = r[i] / lead;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] -= f * divisor.coeffs_[j];
  }
  r.resize(std::min<std::size_t>(r.size(), static_cast<std::size_t>(dd)));
  return Polynomial(std::move(r));
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return Polynomial(std::move(d));
}

namespace {

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    Polynomial r = seq[seq.size() - 2].remainder(seq.back());
    seq.push_back(Polynomial() - r);
  }
  seq.pop_back();
  return seq;
}

int sign_variations(const std::vector<Polynomial>& seq, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const Polynomial& q : seq) {
    const int s = sign(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

}  // namespace

int count_roots_between(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw Error("IdenticallyZero", "root count of the zero polynomial");
  const auto seq = sturm_sequence(p);
  return sign_variations(seq, a) - sign_variations(seq, b);
}

std::vector<SigmaPoint> sigma_points(const std::vector<Gadget>& gadgets) {
  std::vector<SigmaPoint> out;
  std::size_t idx = 0;
  for (const Gadget& g : gadgets) {
    out.push_back({g.ell, +1, idx++});
    out.push_back({g.m, +1, idx++});
    out.push_back({g.r, +1, idx++});
    out.push_back({g.t, -1, idx++});
  }
  return out;
}

Polynomial TauPolynomial::poly() const { return Polynomial({coeffs.begin(), coeffs.end()}); }

Rational TauPolynomial::operator()(const Rational& tau) const {
  return ((coeffs[3] * tau + coeffs[2]) * tau + coeffs[1]) * tau + coeffs[0];
}

bool TauPolynomial::identically_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

std::string to_string(TauPolynomial::Kind kind) {
  return kind == TauPolynomial::Kind::kCollinearity ? "collinearity" : "cocircularity";
}

namespace {

Rational det3_rows(const std::array<Rational, 3>& x, const std::array<Rational, 3>& y) {
  return (x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]);
}

Polynomial det4(const std::array<std::array<Polynomial, 4>, 4>& m) {
  std::array<int, 4> perm{0, 1, 2, 3};
  Polynomial total;
  do {
    int inversions = 0;
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) inversions += perm[a] > perm[b];
    }
    Polynomial term({Rational(inversions % 2 ? -1 : 1)});
    for (int row = 0; row < 4; ++row) term = term * m[row][perm[row]];
    total = total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TauPolynomial collinearity_poly(const SigmaPoint& p, const SigmaPoint& q, const SigmaPoint& r) {
  const std::array<Rational, 3> xs{p.p.x, q.p.x, r.p.x};
  const std::array<Rational, 3> ys{p.p.y, q.p.y, r.p.y};
  const std::array<Rational, 3> cubes{p.sigma * p.p.x * p.p.x * p.p.x, q.sigma * q.p.x * q.p.x * q.p.x,
                                      r.sigma * r.p.x * r.p.x * r.p.x};
  TauPolynomial out;
  out.kind = TauPolynomial::Kind::kCollinearity;
  out.coeffs = {det3_rows(xs, ys), det3_rows(xs, cubes), 0, 0};
  out.witness = {p.index, q.index, r.index};
  return out;
}

TauPolynomial cocircularity_poly(const SigmaPoint& p, const SigmaPoint& q, const SigmaPoint& r, const SigmaPoint& s) {
  std::array<std::array<Polynomial, 4>, 4> m;
  const std::array<const SigmaPoint*, 4> pts{&p, &q, &r, &s};
  for (int c = 0; c < 4; ++c) {
    const Point& a = pts[c]->p;
    const Polynomial y({a.y, pts[c]->sigma * a.x * a.x * a.x});
    m[0][c] = Polynomial({Rational(1)});
    m[1][c] = Polynomial({a.x});
    m[2][c] = y;
    m[3][c] = Polynomial({a.x * a.x}) + y * y;
  }
  const Polynomial det = det4(m);
  TauPolynomial out;
  out.kind = TauPolynomial::Kind::kCocircularity;
  if (det.degree() > 3) throw Error("InternalError", "cocircularity polynomial above degree 3");
  for (std::size_t i = 0; i < 4; ++i) out.coeffs[i] = det.coeff(i);
  out.witness = {p.index, q.index, r.index, s.index};
  return out;
}

Rational vandermonde_b(const Rational& p, const Rational& q, const Rational& r) {
  return (q - p) * (r - p) * (r - q) * (p + q + r);
}

Rational complete_homogeneous(int degree, const std::vector<Rational>& xs) {
  // h_d(x_1..x_n) = h_d(x_1..x_{n-1}) + x_n h_{d-1}(x_1..x_n).
  std::vector<Rational> h(degree + 1, 0);
  h[0] = 1;
  for (const Rational& x : xs) {
    for (int d = 1; d <= degree; ++d) h[d] += x * h[d - 1];
  }
  return h[degree];
}

Rational vandermonde_d(const Rational& p, const Rational& q, const Rational& r, const Rational& s) {
  const std::vector<Rational> xs{p, q, r, s};
  Rational v = 1;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) v *= xs[b] - xs[a];
  }
  const Rational schur = complete_homogeneous(3, xs) * complete_homogeneous(1, xs) - complete_homogeneous(4, xs);
  return v * schur;
}

std::optional<Rational> positive_root_bound(const Polynomial& p) {
  if (p.is_zero()) throw Error("IdenticallyZero", "polynomial vanishes identically");
  // Divide out the root at zero.
  std::size_t low = 0;
  while (p.coeff(low) == 0) ++low;
  std::vector<Rational> c(p.coeffs().begin() + static_cast<long>(low), p.coeffs().end());
  const Polynomial q(c);
  if (q.degree() < 1) return std::nullopt;

  int changes = 0;
  int last = 0;
  for (const Rational& a : c) {
    const int s = sign(a);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  if (changes == 0) return std::nullopt;

  // Cauchy bounds: every root z has lower < |z| < upper.
  Rational max_tail = 0, max_head = 0;
  for (std::size_t i = 1; i < c.size(); ++i) max_tail = std::max<Rational>(max_tail, abs(c[i]));
  for (std::size_t i = 0; i + 1 < c.size(); ++i) max_head = std::max<Rational>(max_head, abs(c[i] / c.back()));
  Rational lo = abs(c[0]) / (abs(c[0]) + max_tail);
  Rational hi = 1 + max_head;
  if (count_roots_between(q, 0, hi) == 0) return std::nullopt;

  for (int iter = 0; iter < 40; ++iter) {
    const Rational mid = (lo + hi) / 2;
    if (q(mid) != 0 && count_roots_between(q, 0, mid) == 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Rational positive_root_bound(const std::vector<TauPolynomial>& polys) {
  std::optional<Rational> best;
  for (const TauPolynomial& tp : polys) {
    if (tp.identically_zero()) {
      std::ostringstream os;
      os << to_string(tp.kind) << " polynomial of tuple";
      for (std::size_t w : tp.witness) os << ' ' << w;
      os << " vanishes identically";
      throw Error("IdenticallyZero", os.str());
    }
    if (auto b = positive_root_bound(tp.poly())) {
      if (!best || *b < *best) best = *b;
    }
  }
  return best ? *best : Rational(1);
}

void for_each_tau_polynomial(const std::vector<Gadget>& gadgets, const std::function<void(const TauPolynomial&)>& visit) {
  const auto pts = sigma_points(gadgets);
  const std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        visit(collinearity_poly(pts[a], pts[b], pts[c]));
        for (std::size_t d = c + 1; d < n; ++d) visit(cocircularity_poly(pts[a], pts[b], pts[c], pts[d]));
      }
    }
  }
}

std::vector<TauPolynomial> all_tau_polynomials(const std::vector<Gadget>& gadgets) {
  std::vector<TauPolynomial> out;
  for_each_tau_polynomial(gadgets, [&](const TauPolynomial& tp) { out.push_back(tp); });
  return out;
}

std::vector<FiveCaseRecord> five_case_audit(const std::vector<Gadget>& gadgets) {
  const auto pts = sigma_points(gadgets);
  std::vector<FiveCaseRecord> records;
  const std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        for (std::size_t d = c + 1; d < n; ++d) {
          std::vector<const SigmaPoint*> bottom, top;
          for (std::size_t i : {a, b, c, d}) (pts[i].sigma > 0 ? bottom : top).push_back(&pts[i]);
          if (bottom.size() != 2 || top.size() != 2) continue;
          const TauPolynomial j = cocircularity_poly(pts[a], pts[b], pts[c], pts[d]);
          if (j.coeffs[0] != 0) continue;

          auto by_x = [](const SigmaPoint* u, const SigmaPoint* v) { return u->p.x < v->p.x; };
          std::sort(bottom.begin(), bottom.end(), by_x);
          std::sort(top.begin(), top.end(), by_x);
          const Rational& px = bottom[0]->p.x;
          const Rational& qx = bottom[1]->p.x;
          const Rational& rx = top[0]->p.x;
          const Rational& sx = top[1]->p.x;

          FiveCaseRecord rec;
          rec.tuple = {bottom[0]->index, bottom[1]->index, top[0]->index, top[1]->index};
          if (px < rx && rx < sx && sx < qx) {
            rec.order = CocircularCase::kPRSQ;
          } else if (px < rx && rx < qx && qx == sx) {
            rec.order = CocircularCase::kPRQeqS;
          } else if (px < rx && rx < qx && qx < sx) {
            rec.order = CocircularCase::kPRQS;
          } else if (px == rx && rx < qx && qx < sx) {
            rec.order = CocircularCase::kPeqRQS;
          } else if (rx < px && px < qx && qx < sx) {
            rec.order = CocircularCase::kRPQS;
          } else {
            rec.order = CocircularCase::kOther;
          }
          auto distinct3 = [](const Rational& u, const Rational& v, const Rational& w) {
            return u != v && v != w && u != w;
          };
          rec.distinct_triple = distinct3(px, qx, rx) || distinct3(qx, rx, sx);
          rec.nonvanishing = !j.identically_zero();
          records.push_back(rec);
        }
      }
    }
  }
  return records;
}

std::vector<std::string> EpsilonCertificate::audited_conditions() const {
  std::vector<std::string> ids;
  for (const auto& a : audits) ids.push_back(a.id);
  return ids;
}

bool overlap_allowed(const FamilyCircle& a, const FamilyCircle& b, int k) {
  if (a.gadget != b.gadget || a.gadget <= 1 || a.gadget >= k) return false;
  auto side = [](CircleRole r) {
    switch (r) {
      case CircleRole::F1:
      case CircleRole::F2:
      case CircleRole::F3:
        return 1;
      case CircleRole::G1:
      case CircleRole::G2:
      case CircleRole::G3:
        return 2;
      default:
        return 0;
    }
  };
  return side(a.role) != 0 && side(a.role) == side(b.role);
}

namespace {

// Lower of the two boundary intersections; the shared point through which
// both circles are built is the upper one at small tau.
std::optional<QuadraticPoint> lower_intersection(const Circle& a, const Circle& b) {
  const auto pts = circle_intersections(a, b);
  if (pts.empty()) return std::nullopt;
  if (pts.size() == 1) return pts[0];
  const QuadraticNumber dy{pts[0].ay - pts[1].ay, pts[0].by - pts[1].by, pts[0].d};
  return dy.sign() <= 0 ? pts[0] : pts[1];
}

Rational incircle_value(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Vec u = a - d, v = b - d, w = c - d;
  const Rational nu = norm_sq(u), nv = norm_sq(v), nw = norm_sq(w);
  return u.x * (v.y * nw - nv * w.y) - u.y * (v.x * nw - nv * w.x) + nu * (v.x * w.y - v.y * w.x);
}

}  // namespace

std::vector<AuditResult> audit_perturbation(const std::vector<Gadget>& gadgets, const Rational& tau) {
  const int k = static_cast<int>(gadgets.size());
  const PerturbedSet ps = perturb(gadgets, tau);
  const auto& pts = ps.points.points;
  const std::size_t n = pts.size();
  std::vector<AuditResult> audits;

  {
    std::size_t collinear = 0, cocircular = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        for (std::size_t c = b + 1; c < n; ++c) {
          if (orient(pts[a], pts[b], pts[c]) == 0) ++collinear;
          for (std::size_t d = c + 1; d < n; ++d) {
            if (incircle_value(pts[a], pts[b], pts[c], pts[d]) == 0) ++cocircular;
          }
        }
      }
    }
    audits.push_back({"general_position", collinear == 0 && cocircular == 0,
                      std::to_string(collinear) + " collinear triples, " + std::to_string(cocircular) +
                          " cocircular quadruples"});
  }

  const ConvexChain hull = convex_hull(pts);
  {
    const bool ok = hull.vertices.size() == n && hull.boundary_points == 0;
    audits.push_back({"convex_position", ok,
                      std::to_string(hull.vertices.size()) + " of " + std::to_string(n) + " points are hull vertices"});
  }

  if (k < 2) return audits;

  const CircleFamily fam = build_c0_prime_unchecked(gadgets, tau);
  {
    const auto records = emptiness_audit(ps.points, fam);
    std::string bad;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].on != 2 || records[i].inside != 0) {
        bad += (bad.empty() ? "" : ", ") + fam.circles[i].name() + " (on " + std::to_string(records[i].on) +
               ", inside " + std::to_string(records[i].inside) + ")";
      }
    }
    audits.push_back({"circle_emptiness", bad.empty(),
                      bad.empty() ? std::to_string(fam.size()) + " circles, each with 2 points on and 0 inside" : bad});
  }

  if (hull.full_dimensional()) {
    const OverlapGraph g = overlap_graph(fam.plain(), hull);
    std::string unexpected, unhittable;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (!g.hittable[i]) unhittable += (unhittable.empty() ? "" : ", ") + fam.circles[i].name();
    }
    for (const auto& [i, j] : g.edges) {
      if (!overlap_allowed(fam.circles[i], fam.circles[j], k)) {
        unexpected += (unexpected.empty() ? "" : ", ") + fam.circles[i].name() + "/" + fam.circles[j].name();
      }
    }
    const bool ok = unexpected.empty() && unhittable.empty();
    std::string detail = std::to_string(g.edges.size()) + " overlapping pairs";
    if (!unexpected.empty()) detail += "; unexpected: " + unexpected;
    if (!unhittable.empty()) detail += "; empty blocking area: " + unhittable;
    audits.push_back({"blocking_area_overlaps", ok, detail});
  } else {
    audits.push_back({"blocking_area_overlaps", false, "hull is not full-dimensional"});
  }

  {
    std::string bad;
    auto find = [&](CircleRole role, int gadget) -> const Circle* {
      for (const auto& fc : fam.circles) {
        if (fc.role == role && fc.gadget == gadget) return &fc.circle;
      }
      return nullptr;
    };
    int checked = 0;
    for (int i = 2; i < k; ++i) {
      for (auto [first, third] : {std::pair{CircleRole::F1, CircleRole::F3}, std::pair{CircleRole::G1, CircleRole::G3}}) {
        const Circle* a = find(first, i);
        const Circle* b = find(third, i);
        const auto x = (a && b) ? lower_intersection(*a, *b) : std::nullopt;
        ++checked;
        if (!x || !strictly_inside(hull, *x)) {
          bad += (bad.empty() ? "" : ", ") + to_string(first) + "/" + to_string(third) + "^" + std::to_string(i);
        }
      }
    }
    audits.push_back({"lower_intersections_inside_hull", bad.empty(),
                      bad.empty() ? std::to_string(checked) + " intersection points strictly inside" : "outside: " + bad});
  }
  return audits;
}

EpsilonCertificate certify_epsilon(int k, const EpsilonOptions& options) {
  if (k < 2) throw Error("InvalidK", "certify_epsilon needs k >= 2");
  const auto gadgets = build_p0(k).gadgets;

  std::optional<Rational> bound;
  for_each_tau_polynomial(gadgets, [&](const TauPolynomial& tp) {
    if (tp.identically_zero()) {
      throw Error("IdenticallyZero", to_string(tp.kind) + " polynomial vanishes identically");
    }
    if (auto b = positive_root_bound(tp.poly())) {
      if (!bound || *b < *bound) bound = *b;
    }
  });
  const Rational root_bound = bound ? *bound : Rational(1);

  Rational tau = options.start_tau ? *options.start_tau : pow2(-(2 * k + 4));
  int halvings = 0;
  while (tau >= root_bound) {
    tau /= 2;
    ++halvings;
  }

  std::vector<AuditResult> last;
  for (; halvings <= options.max_halvings; ++halvings, tau /= 2) {
    if (options.should_stop && options.should_stop()) {
      throw Error("TimeBudgetExceeded", "resume_tau=" + to_string(tau));
    }
    last = audit_perturbation(gadgets, tau);
    last.insert(last.begin(), AuditResult{"root_bound", tau < root_bound,
                                          "tau " + to_string(tau) + " below positive root bound " + to_string(root_bound)});
    if (std::all_of(last.begin(), last.end(), [](const AuditResult& a) { return a.passed; })) {
      EpsilonCertificate cert;
      cert.k = k;
      cert.tau_star = tau;
      cert.positive_root_bound = root_bound;
      cert.audits = std::move(last);
      cert.halvings = halvings;
      return cert;
    }
  }
  std::string diag = "no certified tau within " + std::to_string(options.max_halvings) + " halvings";
  for (const auto& a : last) {
    if (!a.passed) {
      diag += "; first failing audit: " + a.id + " (" + a.detail + ")";
      break;
    }
  }
  throw Error("BudgetExhausted", diag);
}

}  // namespace blockade
