#include "rhdt/decimal.hpp"

#include <cmath>
#include <cstdio>

#include "rhdt/error.hpp"

namespace rhdt {

namespace {

Decimal::Coefficient pow10(std::uint32_t n) {
  Decimal::Coefficient r = 1;
  for (std::uint32_t i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

Decimal::Decimal(Coefficient c, std::uint32_t scale)
    : coefficient_(std::move(c)), scale_(scale) {
  normalize();
}

void Decimal::normalize() {
  if (coefficient_ == 0) {
    scale_ = 0;
    return;
  }
  while (scale_ > 0 && coefficient_ % 10 == 0) {
    coefficient_ /= 10;
    --scale_;
  }
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  std::size_t int_digits = 0;
  std::size_t frac_digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    digits.push_back(text[i++]);
    ++int_digits;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      digits.push_back(text[i++]);
      ++frac_digits;
    }
    if (frac_digits == 0) return std::nullopt;
  }
  if (i != text.size() || int_digits + frac_digits == 0) return std::nullopt;

  // cpp_int reads a leading 0 as an octal prefix.
  const auto first = digits.find_first_not_of('0');
  Coefficient c{first == std::string::npos ? std::string("0")
                                           : digits.substr(first)};
  if (negative) c = -c;
  return Decimal(std::move(c), static_cast<std::uint32_t>(frac_digits));
}

Decimal Decimal::from_string(std::string_view text) {
  auto d = parse(text);
  if (!d) {
    throw Error(Errc::InvalidLiteral,
                "not a decimal: '" + std::string(text) + "'");
  }
  return *d;
}

Decimal Decimal::from_double(double v, int places) {
  if (!std::isfinite(v)) {
    throw Error(Errc::InvalidLiteral, "non-finite value cannot be a decimal");
  }
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return from_string(buf);
}

std::string Decimal::to_string() const {
  std::string digits = (coefficient_ < 0 ? Coefficient(-coefficient_)
                                         : coefficient_)
                           .str();
  if (scale_ > 0) {
    if (digits.size() <= scale_) {
      digits.insert(0, scale_ - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - scale_, 1, '.');
  }
  if (coefficient_ < 0) digits.insert(0, 1, '-');
  return digits;
}

double Decimal::to_double() const { return std::stod(to_string()); }

Decimal operator+(const Decimal& a, const Decimal& b) {
  const auto scale = std::max(a.scale_, b.scale_);
  return Decimal(a.coefficient_ * pow10(scale - a.scale_) +
                     b.coefficient_ * pow10(scale - b.scale_),
                 scale);
}

Decimal operator-(const Decimal& a, const Decimal& b) { return a + (-b); }

Decimal operator*(const Decimal& a, const Decimal& b) {
  return Decimal(a.coefficient_ * b.coefficient_, a.scale_ + b.scale_);
}

Decimal Decimal::operator-() const { return Decimal(-coefficient_, scale_); }

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  const auto scale = std::max(a.scale_, b.scale_);
  const Decimal::Coefficient lhs = a.coefficient_ * pow10(scale - a.scale_);
  const Decimal::Coefficient rhs = b.coefficient_ * pow10(scale - b.scale_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace rhdt
