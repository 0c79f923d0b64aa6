#include "sybil/decimal.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace sybil {
namespace {

constexpr int kMaxScale = 18;

__int128 pow10(int exponent) {
  __int128 out = 1;
  for (int i = 0; i < exponent; ++i) {
    out *= 10;
  }
  return out;
}

}  // namespace

Decimal::Decimal(std::int64_t integer) : mantissa_(integer), scale_(0) {}

Decimal Decimal::from_scaled(std::int64_t mantissa, int scale) {
  if (scale < 0 || scale > kMaxScale) {
    throw std::invalid_argument("decimal scale out of range");
  }
  Decimal out;
  out.mantissa_ = mantissa;
  out.scale_ = scale;
  out.normalize();
  return out;
}

Decimal Decimal::parse(std::string_view text) {
  const std::string whole(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("malformed decimal '" + whole + "'");
  }
  while (!frac_part.empty() && frac_part.back() == '0') {
    frac_part.remove_suffix(1);
  }
  if (frac_part.size() > static_cast<std::size_t>(kMaxScale)) {
    throw std::invalid_argument("too many fractional digits in '" + whole + "'");
  }
  __int128 value = 0;
  for (std::string_view part : {int_part, frac_part}) {
    for (char c : part) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument("malformed decimal '" + whole + "'");
      }
      value = value * 10 + (c - '0');
      if (value > std::numeric_limits<std::int64_t>::max()) {
        throw std::invalid_argument("decimal out of range '" + whole + "'");
      }
    }
  }
  auto mantissa = static_cast<std::int64_t>(value);
  return from_scaled(negative ? -mantissa : mantissa, static_cast<int>(frac_part.size()));
}

void Decimal::normalize() {
  while (scale_ > 0 && mantissa_ % 10 == 0) {
    mantissa_ /= 10;
    --scale_;
  }
  if (mantissa_ == 0) {
    scale_ = 0;
  }
}

std::string Decimal::to_string() const {
  std::string digits;
  __int128 magnitude = mantissa_;
  const bool negative = magnitude < 0;
  if (negative) magnitude = -magnitude;
  do {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(magnitude % 10)));
    magnitude /= 10;
  } while (magnitude > 0);
  if (scale_ > 0) {
    while (digits.size() <= static_cast<std::size_t>(scale_)) {
      digits.insert(digits.begin(), '0');
    }
    digits.insert(digits.end() - scale_, '.');
  }
  return negative ? "-" + digits : digits;
}

double Decimal::to_double() const {
  return static_cast<double>(mantissa_) / static_cast<double>(pow10(scale_));
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  const int scale = std::max(a.scale_, b.scale_);
  const __int128 lhs = static_cast<__int128>(a.mantissa_) * pow10(scale - a.scale_);
  const __int128 rhs = static_cast<__int128>(b.mantissa_) * pow10(scale - b.scale_);
  return lhs <=> rhs;
}

}  // namespace sybil
