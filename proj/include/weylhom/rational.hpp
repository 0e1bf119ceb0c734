#pragma once

// Exact rational scalars. Everything in this library is computed over Q;
// there are no floating-point code paths.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace weylhom {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

// Accepts "p" or "p/q" with optional leading sign, nothing else.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  std::size_t pos = 0;
  auto digits = [&](std::size_t& i) {
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw std::invalid_argument("parse_rational: bad number '" + s + "'");
  };
  digits(pos);
  if (pos < s.size()) {
    if (s[pos] != '/') throw std::invalid_argument("parse_rational: bad number '" + s + "'");
    ++pos;
    digits(pos);
  }
  if (pos != s.size()) throw std::invalid_argument("parse_rational: trailing junk in '" + s + "'");
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: bad number '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer b;
  if (k > n) return Integer(0);
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

inline Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace weylhom
