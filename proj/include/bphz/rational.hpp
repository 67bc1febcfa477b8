#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bphz {

using Rational = mpq_class;

/// Parses "3", "-7/4", "0.25", "1e-3" or "2^-5" into an exact rational.
/// Decimal and exponent forms are converted exactly (0.1 becomes 1/10).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact conversion of a finite double.
Rational from_double(double x);

Rational binomial(int n, int k);

}  // namespace bphz
