#pragma once

#include <boost/rational.hpp>
#include <string>

namespace bellstruct {

// Exact coefficient arithmetic. Magnitudes stay well within int64 for the
// party counts handled here (N <= 40).
using Rational = boost::rational<long long>;

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& token);

// "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& r);

// Exact binomial coefficient; requires the result to fit in long long.
long long binomial(int n, int k);

}  // namespace bellstruct
