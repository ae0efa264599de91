#pragma once

#include <gmpxx.h>

#include <string>

#include "sl2surf/errors.hpp"

namespace sl2surf {

// Exact scalar field for block scalars and form coefficients. mpq_class is
// kept canonical (reduced, positive denominator) by GMP itself.
using Rational = mpq_class;

inline Rational rational_pow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (exp < 0) {
    if (base == 0) throw engine_error("rational_pow: zero to a negative power");
    return rational_pow(Rational(1) / base, -exp);
  }
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exp));
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exp));
  out.canonicalize();
  return out;
}

// mpq_class(num, den) does not reduce; this does.
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Parses "3", "-3", "3/4", "-3/4". Whitespace around the token is not eaten.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw parse_error("empty rational literal");
  try {
    Rational q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw parse_error("bad rational literal '" + text + "'");
  }
}

// Exact binary expansion of a double; used when numeric roots are stored
// back into exact structures.
inline Rational rational_from_double(double x) { return Rational(x); }

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace sl2surf
