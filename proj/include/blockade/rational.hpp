#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace blockade {

using Rational = mpq_class;
using Integer = mpz_class;

/// Error carrying a stable machine-readable code (e.g. "DegenerateCircle").
/// The code names mirror the operation error names and are forwarded
/// unchanged through the JSON API.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline int sign(const Rational& q) {
  const int s = sgn(q);
  return (s > 0) - (s < 0);
}

/// Canonical "num/den" form, lowest terms, positive denominator.
std::string to_string(const Rational& q);

/// Accepts "num/den", "num", or a finite decimal such as "-1.25".
/// Throws Error("BadRational") on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Best rational approximation with denominator <= max_den
/// (continued-fraction convergents and semiconvergents).
Rational snap_to_rational(double value, long max_den);

/// Rational r with |r - sqrt(q)| <= 2^-bits and r <= sqrt(q).
Rational sqrt_lower(const Rational& q, unsigned bits);

Rational pow2(long exponent);

}  // namespace blockade
