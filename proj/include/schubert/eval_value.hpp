#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

#include "schubert/rational128.hpp"

namespace schubert {

enum class Arith { Exact, Rational, Float };

const char* to_string(Arith a);
Arith parse_arith(const std::string& s);

// Above this magnitude a double no longer represents every integer.
inline constexpr double kFloatExactLimit = 9007199254740992.0;  // 2^53

// Value of a principal specialization under one of three backends.
class EvalValue {
public:
  EvalValue() : value_(mpz_class(0)) {}
  explicit EvalValue(mpz_class v) : value_(std::move(v)) {}
  explicit EvalValue(Rational128 v) : value_(v) {}
  explicit EvalValue(double v) : value_(v) {}

  Arith arith() const;

  // Exact backends always; Float only while the value is below 2^53.
  bool is_exact() const;

  // Integer value; throws std::domain_error for a non-integral rational or
  // a float (use to_double for those).
  mpz_class to_mpz() const;
  double to_double() const;

  // Decimal rendering. Floats print their nearest integer.
  std::string to_decimal() const;

  const mpz_class* as_exact() const { return std::get_if<mpz_class>(&value_); }
  const Rational128* as_rational() const { return std::get_if<Rational128>(&value_); }
  const double* as_float() const { return std::get_if<double>(&value_); }

private:
  std::variant<mpz_class, Rational128, double> value_;
};

mpz_class to_mpz(u128 x);
mpz_class to_mpz(i128 x);

}  // namespace schubert
