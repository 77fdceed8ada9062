#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pgn {

/// Exact rational number. All template arithmetic is carried out in this type.
using Rational = mpq_class;

/// Parses "p/q", "p", or a finite decimal literal such as "-2.75" or "1e3".
/// The result is canonical. Throws ParseError on malformed input or a zero
/// denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form, always "p/q" with q > 0 (integers print as "p/1").
std::string format_rational(const Rational& value);

/// Exact value of a finite double (every finite double is a dyadic rational).
Rational rational_from_double(double value);

/// Double approximation (truncated toward zero; exact when representable).
double to_double(const Rational& value);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace pgn
