#include "gadgetlab/rational.hpp"

#include "gadgetlab/error.hpp"

#include <cstdio>

namespace gadgetlab {

Rational make_rational(std::uint64_t numerator, std::uint64_t denominator) {
  return make_rational(BigInt(numerator), BigInt(denominator));
}

Rational make_rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw Error(ErrorCode::invalid_argument, "zero denominator");
  return Rational(numerator, denominator);
}

std::string numerator_string(const Rational& q) { return boost::multiprecision::numerator(q).str(); }

std::string denominator_string(const Rational& q) { return boost::multiprecision::denominator(q).str(); }

std::string to_string(const Rational& q) { return numerator_string(q) + "/" + denominator_string(q); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace gadgetlab
