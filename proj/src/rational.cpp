#include "disco/rational.hpp"

#include <cstdio>
#include <stdexcept>

namespace disco {

std::string to_rational_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal_string(const Rational& q, int digits) {
  BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, to_double(q));
    return buf;
  }
  const bool negative = num < 0;
  if (negative) num = -num;
  const int places = std::max(twos, fives);
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const BigInt scaled = num * scale / den;
  std::string s = scaled.str();
  if (places > 0) {
    if (static_cast<int>(s.size()) <= places) s.insert(0, static_cast<std::size_t>(places) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(places), ".");
  }
  return negative ? "-" + s : s;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

BigInt double_factorial(std::int64_t n) {
  if (n < -1) throw std::domain_error("double_factorial: argument below -1");
  BigInt r = 1;
  for (std::int64_t i = n; i > 1; i -= 2) r *= i;
  return r;
}

BigInt factorial(std::int64_t n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  BigInt r = 1;
  for (std::int64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt catalan(std::int64_t n) { return binomial(2 * n, n) / (n + 1); }

}  // namespace disco
