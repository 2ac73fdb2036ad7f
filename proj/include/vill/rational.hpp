#pragma once

// Exact scalar types. Every quantity that feeds a verdict is an
// arbitrary-precision integer or rational; no floating point.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <string>

namespace vill {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

Int numerator(const Rational& r);
Int denominator(const Rational& r);

/// Parses "p/q" (or a bare integer, read as p/1). Throws on q == 0 or junk.
Rational parse_rational(const std::string& text);

/// Canonical reduced form, "/1" omitted — matches GMP's own printing.
std::string format_rational(const Rational& r);

Rational rational_abs(const Rational& r);

/// Smallest integer >= r.
Int rational_ceil(const Rational& r);

/// 2^-i as an exact rational (i >= 0).
Rational pow2_inverse(unsigned i);

}  // namespace vill
