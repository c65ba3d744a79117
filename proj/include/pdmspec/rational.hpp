#pragma once

#include <boost/rational.hpp>
#include <string>
#include <string_view>

namespace pdmspec {

/// Exact rational number used for the ordering-parameter algebra. Constraint
/// comparisons on these values must never be made in floating point.
using Rational = boost::rational<long long>;

/// Parses "p", "-p", or "p/q" (optional signs, no whitespace inside the number).
/// Throws std::invalid_argument on malformed input or q == 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r)
{
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace pdmspec
