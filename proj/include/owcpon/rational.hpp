#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace owcpon {

// Arbitrary-precision exact rational; link loads, capacities and reduction
// fractions never go through floating point.
using Rational = boost::multiprecision::cpp_rational;

// Power values are integer milliwatts so 0.4 W is exact.
using Milliwatts = std::int64_t;

// Accepts "12", "2.5", "-0.125" and "7/3". Returns nullopt on malformed input
// or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

// Fixed-point rendering rounded half away from zero.
std::string format_decimal(const Rational& value, unsigned fraction_digits);

// Watt decimal with at most three fractional digits, non-negative. "0.4" -> 400.
std::optional<Milliwatts> parse_watts(std::string_view text);

// Shortest exact watt rendering of a milliwatt value: 400 -> "0.4", 9344000 -> "9344".
std::string format_watts(Milliwatts mw);

}  // namespace owcpon
