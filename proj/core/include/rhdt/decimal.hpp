#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rhdt {

// Exact base-10 number: coefficient * 10^-scale.
// Always normalized (no trailing zero digits in the fraction, zero has
// scale 0), so structural equality is numeric equality.
class Decimal {
 public:
  using Coefficient = boost::multiprecision::cpp_int;

  Decimal() = default;
  explicit Decimal(std::int64_t v) : coefficient_(v) {}

  // Accepts [+-]?digits(.digits)? and [+-]?.digits; no exponent.
  static std::optional<Decimal> parse(std::string_view text);
  static Decimal from_string(std::string_view text);  // throws InvalidLiteral

  // Correctly rounded to `places` fraction digits (exact binary value,
  // ties to even), as printf("%.*f") does.
  static Decimal from_double(double v, int places);

  // Minimal rendering: no trailing fraction zeros, no "-0", no exponent.
  std::string to_string() const;
  double to_double() const;

  bool is_zero() const { return coefficient_ == 0; }
  bool is_negative() const { return coefficient_ < 0; }

  friend Decimal operator+(const Decimal& a, const Decimal& b);
  friend Decimal operator-(const Decimal& a, const Decimal& b);
  friend Decimal operator*(const Decimal& a, const Decimal& b);
  Decimal operator-() const;

  friend bool operator==(const Decimal& a, const Decimal& b) = default;
  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);

 private:
  Decimal(Coefficient c, std::uint32_t scale);
  void normalize();

  Coefficient coefficient_{0};
  std::uint32_t scale_{0};
};

}  // namespace rhdt
