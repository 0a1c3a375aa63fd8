#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qhm {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rational_floor(const Rational& r) {
  Int num = numerator(r), den = denominator(r);
  Int q = num / den;                      // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

inline Rational fractional_part(const Rational& r) { return r - Rational(rational_floor(r)); }

// Exact: every double is a dyadic rational.
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  int exp = 0;
  double m = std::frexp(v, &exp);        // v = m * 2^exp, |m| in [0.5, 1)
  auto mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rational r(mant);
  if (exp >= 0) r *= Rational(Int(1) << exp);
  else r /= Rational(Int(1) << -exp);
  return r;
}

inline double to_double(const Rational& r) {
  Int k = rational_floor(r);
  Rational frac = r - Rational(k);
  double head = k.convert_to<double>();
  // frac = n/d with 0 <= n < d; both conversions round once, quotient is fine
  double tail = numerator(frac).convert_to<double>() / denominator(frac).convert_to<double>();
  return head + tail;
}

inline Int int_lcm(const Int& a, const Int& b) {
  using boost::multiprecision::gcd;
  if (a == 0 || b == 0) return 0;
  Int g = gcd(a, b);
  Int l = (a / g) * b;
  return l < 0 ? Int(-l) : l;
}

}  // namespace qhm
