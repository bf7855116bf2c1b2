#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace steer {

/// Arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

/// Parses "n", "-n" or "n/d". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);
/// Canonical "n/d" text, or "n" when the denominator is 1.
std::string to_string(const Rational& q);
inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

}  // namespace steer
