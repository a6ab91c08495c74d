#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace gadgetlab {

/// Exact probabilities and measures. Floating point appears only at output.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational make_rational(std::uint64_t numerator, std::uint64_t denominator);
Rational make_rational(const BigInt& numerator, const BigInt& denominator);

std::string numerator_string(const Rational& q);
std::string denominator_string(const Rational& q);
/// "num/den" in lowest terms ("1" is printed as "1/1").
std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// `%.12g` formatting used by every serialized float.
std::string format_double(double value);

Rational pow(const Rational& base, unsigned exponent);

}  // namespace gadgetlab
