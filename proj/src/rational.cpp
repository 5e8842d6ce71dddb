#include "blockade/rational.hpp"

#include <cmath>
#include <limits>

namespace blockade {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error("BadRational", "malformed integer '" + std::string(s) + "'");
  }
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error("BadRational", "empty rational");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(text.substr(0, slash));
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error("BadRational", "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      negative = whole.front() == '-';
      whole.remove_prefix(1);
    }
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw Error("BadRational", "malformed decimal '" + std::string(text) + "'");
    }
    Integer digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(digits, den);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }

  return Rational(parse_integer(text));
}

double to_double(const Rational& q) { return q.get_d(); }

Rational snap_to_rational(double value, long max_den) {
  if (!std::isfinite(value)) throw Error("BadRational", "non-finite value");
  if (max_den < 1) max_den = 1;
  // Exact binary expansion of the double, then continued fractions on it.
  const Rational target(value);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational x = target;
  while (true) {
    Integer a = x.get_num() / x.get_den();
    if (x < 0 && a * x.get_den() != x.get_num()) a -= 1;
    const Integer q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Best semiconvergent within the bound.
      const Integer k = (Integer(max_den) - q0) / q1;
      const Rational semi(k * p1 + p0, k * q1 + q0);
      const Rational conv(p1, q1);
      return abs(semi - target) < abs(conv - target) ? semi : conv;
    }
    const Integer p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Rational frac = x - Rational(a);
    if (frac == 0) break;
    x = 1 / frac;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return r;
}

Rational sqrt_lower(const Rational& q, unsigned bits) {
  if (q < 0) throw Error("BadRational", "sqrt of negative rational");
  // floor(sqrt(q * 4^bits)) / 2^bits.
  Integer scale = 1;
  scale <<= 2 * bits;
  const Integer scaled = (q.get_num() * scale) / q.get_den();
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Integer den = 1;
  den <<= bits;
  Rational r(root, den);
  r.canonicalize();
  return r;
}

Rational pow2(long exponent) {
  Integer one = 1;
  if (exponent >= 0) {
    one <<= static_cast<unsigned long>(exponent);
    return Rational(one);
  }
  one <<= static_cast<unsigned long>(-exponent);
  return Rational(Integer(1), one);
}

}  // namespace blockade
