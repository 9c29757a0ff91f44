#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace hvf {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "p", "p/q", or a finite decimal such as "-1.25" into an exact rational.
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double.
Rational rational_from_double(double value);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// r^e for a (possibly negative) integer exponent; r must be nonzero when e < 0.
Rational pow(const Rational& r, int e);

}  // namespace hvf
