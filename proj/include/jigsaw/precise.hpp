#ifndef JIGSAW_PRECISE_HPP
#define JIGSAW_PRECISE_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace jigsaw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 512-bit binary mantissa: enough headroom to compare bounds like e^582
// (~10^252) against exact counts without rounding doubt.
using BigFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<512, boost::multiprecision::digit_base_2>>;

inline BigFloat to_bigfloat(const Rational& q) {
  return BigFloat(boost::multiprecision::numerator(q)) /
         BigFloat(boost::multiprecision::denominator(q));
}

inline BigInt factorial_int(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial_int(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

// Generalized binomial coefficient C(a, k) = a(a-1)...(a-k+1)/k! for any
// integer a, possibly negative.
inline Rational binomial_generalized(long long a, unsigned k) {
  Rational num = 1;
  for (unsigned i = 0; i < k; ++i) num *= Rational(a - static_cast<long long>(i));
  return num / Rational(factorial_int(k));
}

}  // namespace jigsaw

#endif
