#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace sybil {

using Rational = boost::rational<std::int64_t>;

/// Parses "0.05", "-3", "1/3" or "2/10" into an exact rational. Decimal
/// inputs are converted digit by digit, so "0.1" is exactly 1/10.
Rational parse_rational(std::string_view text);

/// "1/9", "0", "-3/2".
std::string to_fraction_string(const Rational& value);

/// Terminating decimals print as decimals ("0.05"), everything else as a
/// fraction ("1/3"). parse_rational() reads either form back exactly.
std::string to_canonical_string(const Rational& value);

/// Nearest double, for display only.
double to_double(const Rational& value);

/// Floor of value * n, exact.
std::int64_t floor_times(const Rational& value, std::int64_t n);

}  // namespace sybil
