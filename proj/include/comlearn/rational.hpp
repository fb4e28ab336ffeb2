#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace comlearn {

/// Exact rational number. Every belief, cutoff, likelihood and utility in the
/// library is one of these; there are no floating-point tolerances anywhere.
using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical "numerator/denominator" form, always with an explicit
/// denominator ("1/1", "-3/4"). Round-trips bit-exactly through
/// parse_rational.
std::string to_string(const Rational& value);

/// Accepts "n/d" or a bare integer "n". Throws std::invalid_argument on
/// anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

inline Rational midpoint(const Rational& lo, const Rational& hi) {
  Rational m = (lo + hi) / 2;
  m.canonicalize();
  return m;
}

} // namespace comlearn
