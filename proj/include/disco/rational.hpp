#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace disco {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "num/den", or just "num" when the denominator is 1.
std::string to_rational_string(const Rational& q);

/// Exact decimal expansion when the denominator has no prime factors other
/// than 2 and 5 ("26.9375"), otherwise rounded to `digits` significant digits.
std::string to_decimal_string(const Rational& q, int digits = 17);

double to_double(const Rational& q);

/// n!! with (-1)!! = 0!! = 1.
BigInt double_factorial(std::int64_t n);
BigInt binomial(std::int64_t n, std::int64_t k);
BigInt factorial(std::int64_t n);
BigInt catalan(std::int64_t n);

}  // namespace disco
