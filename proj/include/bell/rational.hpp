#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bell {

using Rational = mpq_class;

/// Exact value of a finite double (every finite double is a dyadic rational).
Rational exact_rational(double value);

/// Parses "p/q", an integer, or a plain decimal such as "-0.375" exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace bell
