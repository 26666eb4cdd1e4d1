#pragma once

// Exact rational scalars. Backed by GMP; mpq_class keeps values in lowest
// terms with a positive denominator after every arithmetic operation.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hkd {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (optional leading '-'). Throws Error{Parse}.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Decimal rendering with `digits` significant digits; presentation only.
std::string to_decimal(const Rational& value, int digits = 20);

/// Largest integer <= value.
Integer floor(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r{Integer(static_cast<long>(num)), Integer(static_cast<long>(den))};
  r.canonicalize();
  return r;
}

/// Converts a count to a Rational without going through `long` truncation.
Rational from_u64(std::uint64_t value);

}  // namespace hkd
