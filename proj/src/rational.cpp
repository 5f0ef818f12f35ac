#include "coindie/rational.hpp"

namespace coindie {

namespace {

using UInt128 = unsigned __int128;

[[noreturn]] void overflow() {
  throw std::overflow_error("Rational: 128-bit integer overflow");
}

Int128 checked_add(Int128 a, Int128 b) {
  Int128 result;
  if (__builtin_add_overflow(a, b, &result)) overflow();
  return result;
}

Int128 checked_mul(Int128 a, Int128 b) {
  Int128 result;
  if (__builtin_mul_overflow(a, b, &result)) overflow();
  return result;
}

UInt128 magnitude(Int128 value) {
  return value < 0 ? UInt128(0) - UInt128(value) : UInt128(value);
}

Int128 gcd_magnitude(Int128 a, Int128 b) {
  UInt128 x = magnitude(a);
  UInt128 y = magnitude(b);
  while (y != 0) {
    const UInt128 r = x % y;
    x = y;
    y = r;
  }
  return Int128(x);
}

}  // namespace

std::string int128_to_string(Int128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  UInt128 mag = magnitude(value);
  std::string digits;
  while (mag != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

Rational::Rational(Int128 numerator, Int128 denominator)
    : num_(numerator), den_(denominator) {
  if (den_ == 0) throw std::domain_error("Rational: zero denominator");
  normalize();
}

void Rational::normalize() {
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  const Int128 g = gcd_magnitude(num_, den_);
  num_ /= g;
  den_ /= g;
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Rational& Rational::operator+=(const Rational& other) {
  // a/b + c/d with b,d > 0: reduce by g = gcd(b,d) first to keep intermediates small.
  const Int128 g = gcd_magnitude(den_, other.den_);
  const Int128 den_reduced = den_ / g;
  const Int128 other_den_reduced = other.den_ / g;
  num_ = checked_add(checked_mul(num_, other_den_reduced),
                     checked_mul(other.num_, den_reduced));
  den_ = checked_mul(den_reduced, other.den_);
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  return *this += -other;
}

Rational& Rational::operator*=(const Rational& other) {
  const Int128 g1 = gcd_magnitude(num_, other.den_);
  const Int128 g2 = gcd_magnitude(other.num_, den_);
  num_ = checked_mul(num_ / g1, other.num_ / g2);
  den_ = checked_mul(den_ / g2, other.den_ / g1);
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.num_ == 0) throw std::domain_error("Rational: division by zero");
  return *this *= Rational(other.den_, other.num_);
}

Rational Rational::operator-() const {
  Rational result = *this;
  result.num_ = -result.num_;
  return result;
}

std::strong_ordering Rational::operator<=>(const Rational& other) const {
  // Denominators are positive, so cross-multiplication preserves order.
  const Int128 lhs = checked_mul(num_, other.den_);
  const Int128 rhs = checked_mul(other.num_, den_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  return int128_to_string(num_) + "/" + int128_to_string(den_);
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

}  // namespace coindie
