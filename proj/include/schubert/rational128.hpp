#pragma once

#include <stdexcept>
#include <string>

#include "schubert/perm.hpp"

namespace schubert {

using i128 = __int128;

// Raised when a 128-bit rational operation cannot be represented exactly.
class RationalOverflow : public std::overflow_error {
public:
  RationalOverflow() : std::overflow_error("128-bit rational overflow: exact result lost") {}
};

// Reduced fraction with 128-bit numerator and positive denominator.
class Rational128 {
public:
  Rational128() = default;
  Rational128(long long v) : num_(v) {}
  Rational128(i128 num, i128 den);

  i128 num() const { return num_; }
  i128 den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  Rational128& operator+=(const Rational128& o);
  Rational128& operator*=(const Rational128& o);
  friend Rational128 operator+(Rational128 a, const Rational128& b) { return a += b; }
  friend Rational128 operator*(Rational128 a, const Rational128& b) { return a *= b; }
  friend bool operator==(const Rational128&, const Rational128&) = default;

  double to_double() const;
  std::string to_string() const;

private:
  void normalize();

  i128 num_ = 0;
  i128 den_ = 1;
};

std::string i128_to_string(i128 x);

}  // namespace schubert
