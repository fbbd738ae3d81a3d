#ifndef NEARCURVE_RATIONAL_HPP
#define NEARCURVE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace nearcurve {

/// Exact rational with arbitrary-precision numerator/denominator.
/// mpq_class keeps values canonical (coprime, positive denominator)
/// through all arithmetic; raw constructions below canonicalize.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parse "p/q" or "p" (decimal integers, optional leading '-').
/// Bare floating-point ("0.25", "1e-3") is rejected.
Rational parse_rational(const std::string& text);

/// Serialize as "p/q" ("p" when the denominator is 1).
std::string to_fraction_string(const Rational& r);

/// Largest integer <= r.
Integer rational_floor(const Rational& r);

/// Smallest integer >= r.
Integer rational_ceil(const Rational& r);

/// r^e for e >= 0, exact.
Rational rational_pow(const Rational& r, unsigned long e);

inline double to_double(const Rational& r) { return r.get_d(); }

} // namespace nearcurve

#endif
