#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace confound {

/// Exact rational with arbitrary-precision numerator and denominator,
/// always in lowest terms with a positive denominator.
using Rational = mpq_class;

/// Accepts "p/q", integers and finite decimals ("0.25", "-1.5"). Throws
/// Error(Parse) on anything else or on a zero denominator.
Rational parse_rational(std::string_view text);

/// "4/15", "1/4", "-3", "0".
std::string to_exact_string(const Rational& r);

enum class Rounding {
  TowardZero,  // truncate the digits past the last kept place
  HalfEven,
};

/// Fixed-point rendering with `digits` places, e.g. 4/15 -> "0.266"
/// (TowardZero) or "0.267" (HalfEven).
std::string to_decimal(const Rational& r, int digits = 3, Rounding mode = Rounding::TowardZero);

}  // namespace confound
