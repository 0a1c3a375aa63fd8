#pragma once

#include "qhm/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace qhm {

struct FieldMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
  size_t offset;
  ParseError(const std::string& what, size_t off)
      : std::invalid_argument(what + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

// Element of Q or of a real quadratic field: value = a + b*sqrt(d).
//
// Invariants: d == 0 encodes Q (then b == 0); otherwise d is a squarefree
// integer >= 2 and b may be any rational.  d == 1 is folded into the rational
// part at construction.  All predicates (sign, comparison, floor) are exact;
// no floating point is consulted for decisions.
class ExactScalar {
 public:
  ExactScalar() : a_(0), b_(0), d_(0) {}
  ExactScalar(long long n) : a_(n), b_(0), d_(0) {}  // NOLINT implicit
  explicit ExactScalar(Rational a) : a_(std::move(a)), b_(0), d_(0) {}
  ExactScalar(Rational a, Rational b, long d);

  static ExactScalar surd(Rational coeff, long d) { return ExactScalar(Rational(0), std::move(coeff), d); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  long field() const { return d_; }
  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  friend ExactScalar operator+(ExactScalar l, const ExactScalar& r) { return l += r; }
  friend ExactScalar operator-(ExactScalar l, const ExactScalar& r) { return l -= r; }
  friend ExactScalar operator*(ExactScalar l, const ExactScalar& r) { return l *= r; }

  ExactScalar scaled(const Rational& f) const;  // f * this

  int sign() const;  // exact: -1, 0, +1
  friend bool operator==(const ExactScalar& l, const ExactScalar& r) {
    return l.a_ == r.a_ && l.b_ == r.b_ && l.d_ == r.d_;
  }
  friend std::strong_ordering operator<=>(const ExactScalar& l, const ExactScalar& r) {
    int s = (l - r).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  Int floor() const;
  // value = k + r with r in [0,1); returns {k, r}
  std::pair<Int, ExactScalar> split_floor() const;
  ExactScalar mod1() const { return split_floor().second; }
  bool is_integer() const { return b_ == 0 && denominator(a_) == 1; }

  // Certified rational approximation: |result - value| < eps (eps > 0).
  Rational approx(const Rational& eps) const;
  double to_double() const;

 private:
  Rational a_, b_;
  long d_;
};

inline ExactScalar operator*(const Rational& f, const ExactScalar& s) { return s.scaled(f); }

// "p/q", "p/q+r/s*sqrt(d)", "r/s*sqrt(d)", whitespace-insensitive.
// parse_scalar(to_string(s)) == s exactly.
std::string to_string(const ExactScalar& s);
ExactScalar parse_scalar(std::string_view text);

bool is_squarefree(long d);

}  // namespace qhm
