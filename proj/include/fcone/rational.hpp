#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fcone {

/// Arbitrary-precision rational. Every coefficient, F-value and certificate
/// entry in the library is one of these; nothing goes through floating point.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q > 0). Throws std::invalid_argument on anything
/// else, including decimals and exponents.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);

/// num/den in lowest terms. Use this rather than the two-argument mpq_class
/// constructor, which leaves the fraction unreduced.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rational& q) { return sgn(q); }

Rational floor(const Rational& q);
Rational ceil(const Rational& q);

}  // namespace fcone
