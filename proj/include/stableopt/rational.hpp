#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace stableopt {

// All objective values, edge weights and costs are exact rationals; no
// floating point enters the solve path.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Canonical text form: "n" when the denominator is 1, "n/d" otherwise.
std::string rational_to_string(const Rational& r);

// Accepts "n", "-n", "n/d" and decimal notation "n.ddd" (parsed exactly,
// e.g. "0.25" -> 1/4). Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace stableopt
