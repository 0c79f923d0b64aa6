#include "sybil/rational.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace sybil {
namespace {

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  }
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
  if (ec == std::errc::result_out_of_range) {
    throw std::invalid_argument("number out of range '" + std::string(whole) + "'");
  }
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  }
  return out;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto dot = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  }
  for (std::string_view part : {int_part, frac_part}) {
    for (char c : part) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
      }
    }
  }
  while (!frac_part.empty() && frac_part.back() == '0') {
    frac_part.remove_suffix(1);
  }
  if (frac_part.size() > 18) {
    throw std::invalid_argument("too many decimal digits in '" + std::string(whole) + "'");
  }
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) {
    scale *= 10;
  }
  std::int64_t int_value = int_part.empty() ? 0 : parse_int(int_part, whole);
  std::int64_t frac_value = frac_part.empty() ? 0 : parse_int(frac_part, whole);
  __int128 numerator = static_cast<__int128>(int_value) * scale + frac_value;
  if (numerator > std::numeric_limits<std::int64_t>::max()) {
    throw std::invalid_argument("number out of range '" + std::string(whole) + "'");
  }
  Rational out(static_cast<std::int64_t>(numerator), scale);
  return negative ? -out : out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return parse_decimal(text, whole);
  }
  Rational num = parse_decimal(text.substr(0, slash), whole);
  Rational den = parse_decimal(text.substr(slash + 1), whole);
  if (den == Rational(0)) {
    throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
  }
  return num / den;
}

std::string to_fraction_string(const Rational& value) {
  if (value.denominator() == 1) {
    return std::to_string(value.numerator());
  }
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::string to_canonical_string(const Rational& value) {
  std::int64_t den = value.denominator();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) {
    return to_fraction_string(value);
  }
  const int digits = std::max(twos, fives);
  if (digits == 0) {
    return std::to_string(value.numerator());
  }
  // value = num / (2^a 5^b); scale to num * k / 10^digits.
  __int128 scaled = value.numerator();
  for (int i = twos; i < digits; ++i) scaled *= 2;
  for (int i = fives; i < digits; ++i) scaled *= 5;
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string raw;
  while (scaled > 0) {
    raw.insert(raw.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  }
  while (raw.size() <= static_cast<std::size_t>(digits)) {
    raw.insert(raw.begin(), '0');
  }
  raw.insert(raw.end() - digits, '.');
  return negative ? "-" + raw : raw;
}

double to_double(const Rational& value) {
  return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

std::int64_t floor_times(const Rational& value, std::int64_t n) {
  __int128 num = static_cast<__int128>(value.numerator()) * n;
  __int128 den = value.denominator();
  __int128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) {
    --q;
  }
  return static_cast<std::int64_t>(q);
}

}  // namespace sybil
