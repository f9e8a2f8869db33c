#include "schubert/eval_value.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace schubert {

const char* to_string(Arith a) {
  switch (a) {
    case Arith::Exact: return "exact";
    case Arith::Rational: return "rational";
    case Arith::Float: return "float";
  }
  return "?";
}

Arith parse_arith(const std::string& s) {
  if (s == "exact") return Arith::Exact;
  if (s == "rational") return Arith::Rational;
  if (s == "float" || s == "double") return Arith::Float;
  throw std::invalid_argument("unknown arithmetic '" + s + "'");
}

Arith EvalValue::arith() const {
  switch (value_.index()) {
    case 0: return Arith::Exact;
    case 1: return Arith::Rational;
    default: return Arith::Float;
  }
}

bool EvalValue::is_exact() const {
  if (auto* d = as_float()) return std::fabs(*d) <= kFloatExactLimit;
  return true;
}

mpz_class to_mpz(u128 x) {
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(x >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(x)));
  return (hi << 64) + lo;
}

mpz_class to_mpz(i128 x) {
  if (x < 0) return -to_mpz(static_cast<u128>(-x));
  return to_mpz(static_cast<u128>(x));
}

mpz_class EvalValue::to_mpz() const {
  if (auto* z = as_exact()) return *z;
  if (auto* q = as_rational()) {
    if (!q->is_integer()) throw std::domain_error("rational value is not an integer: " + q->to_string());
    return schubert::to_mpz(q->num());
  }
  throw std::domain_error("float value has no exact integer form");
}

double EvalValue::to_double() const {
  if (auto* z = as_exact()) return z->get_d();
  if (auto* q = as_rational()) return q->to_double();
  return *as_float();
}

std::string EvalValue::to_decimal() const {
  if (auto* z = as_exact()) return z->get_str();
  if (auto* q = as_rational()) return q->to_string();
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.0f", *as_float());
  return buf;
}

}  // namespace schubert
