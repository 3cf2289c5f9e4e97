#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rgames {

// All core arithmetic is exact. Floating point appears only in the
// Monte-Carlo estimator and the grid scan's pre-filter, and every
// reported grid result is re-verified with rationals.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Accepts "p", "-p", "p/q" with q > 0 after normalization.
std::optional<Rational> try_parse_rational(std::string_view text);
Rational parse_rational(std::string_view text);

// Canonical form: reduced, "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& r);
std::string to_string(const std::vector<Rational>& values);

double to_double(const Rational& r);

// Parses "a, b, c" (comma or whitespace separated rationals).
std::vector<Rational> parse_rational_list(std::string_view text);

}  // namespace rgames
