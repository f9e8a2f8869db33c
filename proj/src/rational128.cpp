#include "schubert/rational128.hpp"

namespace schubert {

namespace {

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw RationalOverflow();
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw RationalOverflow();
  return r;
}

}  // namespace

Rational128::Rational128(i128 num, i128 den) : num_(num), den_(den) {
  if (den == 0) throw std::domain_error("zero denominator");
  normalize();
}

void Rational128::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  i128 g = gcd128(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational128& Rational128::operator+=(const Rational128& o) {
  if (den_ == o.den_) {
    num_ = checked_add(num_, o.num_);
    normalize();
    return *this;
  }
  i128 g = gcd128(den_, o.den_);
  i128 lhs = checked_mul(num_, o.den_ / g);
  i128 rhs = checked_mul(o.num_, den_ / g);
  num_ = checked_add(lhs, rhs);
  den_ = checked_mul(den_ / g, o.den_);
  normalize();
  return *this;
}

Rational128& Rational128::operator*=(const Rational128& o) {
  // Cross-reduce first so intermediate products stay small.
  i128 g1 = gcd128(num_, o.den_);
  i128 g2 = gcd128(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  num_ = checked_mul(num_ / g1, o.num_ / g2);
  den_ = checked_mul(den_ / g2, o.den_ / g1);
  normalize();
  return *this;
}

double Rational128::to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

std::string i128_to_string(i128 x) {
  if (x < 0) return "-" + u128_to_string(static_cast<u128>(-x));
  return u128_to_string(static_cast<u128>(x));
}

std::string Rational128::to_string() const {
  if (den_ == 1) return i128_to_string(num_);
  return i128_to_string(num_) + "/" + i128_to_string(den_);
}

}  // namespace schubert
