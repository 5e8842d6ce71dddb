#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blockade/constructions.hpp"
#include "blockade/geometry.hpp"

namespace blockade {

/// Dense polynomial in tau, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  Rational operator()(const Rational& x) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  /// Remainder of Euclidean division by a nonzero divisor.
  Polynomial remainder(const Polynomial& divisor) const;
  Polynomial derivative() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Number of distinct real roots in the open interval (a, b), via Sturm
/// sign variations. Requires p(a) != 0 and p(b) != 0.
int count_roots_between(const Polynomial& p, const Rational& a, const Rational& b);

/// Construction point with its perturbation direction: +1 bottom, -1 top.
struct SigmaPoint {
  Point p;
  int sigma = 1;
  std::size_t index = 0;
};

std::vector<SigmaPoint> sigma_points(const std::vector<Gadget>& gadgets);

struct TauPolynomial {
  enum class Kind { kCollinearity, kCocircularity };

  /// A + B tau + C tau^2 + D tau^3.
  std::array<Rational, 4> coeffs;
  Kind kind = Kind::kCollinearity;
  std::vector<std::size_t> witness;

  Polynomial poly() const;
  Rational operator()(const Rational& tau) const;
  bool identically_zero() const;
};

std::string to_string(TauPolynomial::Kind kind);

/// det [1 1 1; x; y + tau sigma x^3].
TauPolynomial collinearity_poly(const SigmaPoint& p, const SigmaPoint& q, const SigmaPoint& r);

/// det [1 1 1 1; x; Y; x^2 + Y^2] with Y = y + tau sigma x^3.
TauPolynomial cocircularity_poly(const SigmaPoint& p, const SigmaPoint& q, const SigmaPoint& r, const SigmaPoint& s);

/// Closed forms of the leading coefficients for uniform sigma = +1:
/// B_pqr = (q-p)(r-p)(r-q)(p+q+r) and
/// D_pqrs = prod_{a<b} (x_b - x_a) * s_{(3,1)}(p, q, r, s) where
/// s_{(3,1)} = h_3 h_1 - h_4 has only positive coefficients.
Rational vandermonde_b(const Rational& p, const Rational& q, const Rational& r);
Rational vandermonde_d(const Rational& p, const Rational& q, const Rational& r, const Rational& s);
Rational complete_homogeneous(int degree, const std::vector<Rational>& xs);

/// Rational b > 0 below every positive root of every polynomial. Throws
/// Error("IdenticallyZero") for a vanishing polynomial.
Rational positive_root_bound(const std::vector<TauPolynomial>& polys);

/// Bound for a single polynomial; nullopt when it has no positive root.
std::optional<Rational> positive_root_bound(const Polynomial& p);

/// Streams every collinearity (C(n,3)) and cocircularity (C(n,4))
/// polynomial of the construction; O(n^4) tuples.
void for_each_tau_polynomial(const std::vector<Gadget>& gadgets, const std::function<void(const TauPolynomial&)>& visit);

std::vector<TauPolynomial> all_tau_polynomials(const std::vector<Gadget>& gadgets);

/// Order types of a finite-radius cocircular quadruple of two bottom points
/// p < q and two top points r < s, listed left to right.
enum class CocircularCase {
  kPRSQ,     // p < r < s < q
  kPRQeqS,   // p < r < q = s
  kPRQS,     // p < r < q < s
  kPeqRQS,   // p = r < q < s
  kRPQS,     // r < p < q < s
  kOther
};

struct FiveCaseRecord {
  std::array<std::size_t, 4> tuple;  // p, q, r, s
  CocircularCase order;
  bool distinct_triple;  // {p,q,r} or {q,r,s} have pairwise distinct x
  bool nonvanishing;     // J_pqrs is not identically zero
};

std::vector<FiveCaseRecord> five_case_audit(const std::vector<Gadget>& gadgets);

struct AuditResult {
  std::string id;
  bool passed = false;
  std::string detail;
};

struct EpsilonCertificate {
  int k = 0;
  Rational tau_star;
  Rational positive_root_bound;
  std::vector<AuditResult> audits;
  int halvings = 0;

  std::vector<std::string> audited_conditions() const;
};

/// Exact audits of the perturbed construction at a given tau.
std::vector<AuditResult> audit_perturbation(const std::vector<Gadget>& gadgets, const Rational& tau);

/// Circle pairs of the general-position family whose blocking areas may
/// overlap: any two of {F1, F2, F3} or of {G1, G2, G3} in a middle gadget.
bool overlap_allowed(const FamilyCircle& a, const FamilyCircle& b, int k);

struct EpsilonOptions {
  std::optional<Rational> start_tau;
  int max_halvings = 96;
  /// Polled between halvings; returning true aborts with
  /// Error("TimeBudgetExceeded") whose message carries the next tau to try.
  std::function<bool()> should_stop;
};

EpsilonCertificate certify_epsilon(int k, const EpsilonOptions& options = {});

}  // namespace blockade
