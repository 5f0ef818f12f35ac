#pragma once

// Exact rational arithmetic on checked 128-bit integers. Every operation
// either returns the mathematically exact result or throws; nothing is ever
// rounded. The probabilities handled by this project have denominators of
// the form n * 2^w, so 128 bits leave enormous headroom, and the overflow
// checks turn any violation of that assumption into a loud error.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#ifndef __SIZEOF_INT128__
#error "coindie requires a compiler with 128-bit integer support (GCC/Clang)"
#endif

namespace coindie {

using Int128 = __int128;

std::string int128_to_string(Int128 value);

class Rational {
 public:
  constexpr Rational() = default;
  Rational(Int128 numerator, Int128 denominator);

  // Whole numbers convert implicitly; 5 and Rational(5, 1) are the same value.
  constexpr Rational(Int128 value) : num_(value), den_(1) {}  // NOLINT
  constexpr Rational(std::uint64_t value) : num_(value), den_(1) {}  // NOLINT
  constexpr Rational(int value) : num_(value), den_(1) {}  // NOLINT

  Int128 numerator() const { return num_; }
  Int128 denominator() const { return den_; }

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  // Normal form (gcd 1, positive denominator) makes equality field-wise.
  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  }
  std::strong_ordering operator<=>(const Rational& other) const;

  // Rendered as "numerator/denominator", e.g. "1/6", "1/1", "0/1".
  std::string to_string() const;

  double to_double() const;

 private:
  void normalize();

  Int128 num_ = 0;
  Int128 den_ = 1;
};

}  // namespace coindie
