#pragma once

// Exact arbitrary-precision rationals and a few conversions the rest of the
// library needs (decimal/scientific literals, directed rounding to double).

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace dulac {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "3", "-7/2", "0.125", "1e-4", "2.5e3". Exact; no float detour.
std::optional<Rational> parse_rational(std::string_view text);

// Canonical print: "p" or "p/q" with q > 0. Re-parseable.
std::string to_string(const Rational& q);

// Largest double <= q / smallest double >= q. Exact by rational comparison.
double to_double_down(const Rational& q);
double to_double_up(const Rational& q);
// Round-to-nearest-ish (boost's conversion); fine for display and sampling.
double to_double(const Rational& q);

inline int sign(const Rational& q) { return q.sign(); }

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
Rational abs(const Rational& q);

} // namespace dulac
