#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "ambra/error.hpp"

namespace ambra {

// Exact rationals, canonical form maintained by GMP (gcd-reduced, positive
// denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long n) { return Rational(n); }
inline Rational rat(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Parses "p", "-p/q" style strings.
inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) raise(ErrorKind::ParseError, "bad rational literal '" + s + "'");
  r.canonicalize();
  if (r.get_den() == 0) raise(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

// Total order helper usable as a three-way comparison.
inline int rational_cmp(const Rational& a, const Rational& b) { return cmp(a, b); }

}  // namespace ambra
