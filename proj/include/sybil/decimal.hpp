#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sybil {

/// Exact signed decimal: mantissa * 10^-scale with up to 18 fractional
/// digits. Ideal points are only ever compared and selected, never combined
/// arithmetically, so this is all the precision the parameter rules need.
class Decimal {
 public:
  constexpr Decimal() = default;
  Decimal(std::int64_t integer);  // NOLINT: integers convert implicitly

  /// mantissa * 10^-scale, scale in [0, 18].
  static Decimal from_scaled(std::int64_t mantissa, int scale);
  static Decimal parse(std::string_view text);

  std::int64_t mantissa() const { return mantissa_; }
  int scale() const { return scale_; }

  /// Shortest exact form: "2", "-0.25", "1.5".
  std::string to_string() const;
  double to_double() const;

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);
  friend bool operator==(const Decimal& a, const Decimal& b) = default;

 private:
  void normalize();

  std::int64_t mantissa_ = 0;
  int scale_ = 0;
};

}  // namespace sybil
