#include "qhm/exact_scalar.hpp"

#include <cctype>
#include <map>
#include <mutex>

namespace qhm {

bool is_squarefree(long d) {
  if (d < 0) return false;
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

ExactScalar::ExactScalar(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ < 0) throw std::invalid_argument("negative radicand");
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
    d_ = 0;
    return;
  }
  if (d_ == 0) {
    if (b_ != 0) throw std::invalid_argument("sqrt(0) term must have zero coefficient");
    return;
  }
  if (!is_squarefree(d_)) throw std::invalid_argument("radicand " + std::to_string(d_) + " is not squarefree");
  if (b_ == 0) d_ = 0;
}

namespace {

// Shared field for a binary op; throws when two distinct surds meet.
long join_fields(long l, long r) {
  if (l == r) return l;
  if (l == 0) return r;
  if (r == 0) return l;
  throw FieldMismatch("mixed radicands sqrt(" + std::to_string(l) + ") and sqrt(" + std::to_string(r) + ")");
}

// floor(sqrt(d) * 2^bits) as an integer; [n/2^bits, (n+1)/2^bits] encloses sqrt(d).
Int sqrt_scaled(long d, unsigned bits) {
  using boost::multiprecision::sqrt;
  return sqrt(Int(d) << (2 * bits));
}

std::pair<Rational, Rational> sqrt_enclosure(long d, unsigned bits) {
  static std::mutex mu;
  static std::map<long, std::pair<Rational, Rational>> cache;  // at 128 bits
  constexpr unsigned kCacheBits = 128;
  if (bits <= kCacheBits) {
    std::scoped_lock lock(mu);
    auto it = cache.find(d);
    if (it == cache.end()) {
      Int n = sqrt_scaled(d, kCacheBits);
      Rational den(Int(1) << kCacheBits);
      it = cache.emplace(d, std::pair{Rational(n) / den, Rational(n + 1) / den}).first;
    }
    return it->second;
  }
  Int n = sqrt_scaled(d, bits);
  Rational den(Int(1) << bits);
  return {Rational(n) / den, Rational(n + 1) / den};
}

}  // namespace

ExactScalar ExactScalar::operator-() const {
  ExactScalar r;
  r.a_ = -a_;
  r.b_ = -b_;
  r.d_ = d_;
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  d_ = join_fields(d_, o.d_);
  a_ += o.a_;
  b_ += o.b_;
  if (b_ == 0) d_ = 0;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  d_ = join_fields(d_, o.d_);
  a_ -= o.a_;
  b_ -= o.b_;
  if (b_ == 0) d_ = 0;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  long d = join_fields(d_, o.d_);
  Rational a = a_ * o.a_;
  if (d != 0 && b_ != 0 && o.b_ != 0) a += b_ * o.b_ * Rational(d);
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = (b_ == 0) ? 0 : d;
  return *this;
}

ExactScalar ExactScalar::scaled(const Rational& f) const {
  ExactScalar r;
  r.a_ = a_ * f;
  r.b_ = b_ * f;
  r.d_ = (r.b_ == 0) ? 0 : d_;
  return r;
}

int ExactScalar::sign() const {
  auto rsign = [](const Rational& r) { return r == 0 ? 0 : (r > 0 ? 1 : -1); };
  if (b_ == 0) return rsign(a_);
  if (a_ == 0) return rsign(b_);
  int sa = rsign(a_), sb = rsign(b_);
  if (sa == sb) return sa;
  // a and b*sqrt(d) pull in opposite directions: compare a^2 against d*b^2.
  Rational lhs = a_ * a_, rhs = Rational(d_) * b_ * b_;
  if (lhs == rhs) throw std::logic_error("sqrt(d) rational: broken invariant");
  return lhs > rhs ? sa : sb;
}

Int ExactScalar::floor() const {
  if (b_ == 0) return rational_floor(a_);
  for (unsigned bits = 32;; bits *= 2) {
    auto [lo, hi] = sqrt_enclosure(d_, bits);
    Rational vlo, vhi;
    if (b_ > 0) {
      vlo = a_ + b_ * lo;
      vhi = a_ + b_ * hi;
    } else {
      vlo = a_ + b_ * hi;
      vhi = a_ + b_ * lo;
    }
    Int flo = rational_floor(vlo), fhi = rational_floor(vhi);
    if (flo == fhi) return flo;  // enclosure pins the floor; value is irrational
    if (bits > 4096) throw std::logic_error("floor enclosure failed to converge");
  }
}

std::pair<Int, ExactScalar> ExactScalar::split_floor() const {
  Int k = floor();
  ExactScalar frac = *this - ExactScalar(Rational(k));
  return {std::move(k), std::move(frac)};
}

Rational ExactScalar::approx(const Rational& eps) const {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  if (b_ == 0) return a_;
  // need |b| * 2^-bits < eps
  Rational need = boost::multiprecision::abs(b_) / eps;
  unsigned bits = 8;
  Int threshold = numerator(need) / denominator(need) + 1;
  while ((Int(1) << bits) <= threshold) bits += 8;
  auto [lo, hi] = sqrt_enclosure(d_, bits);
  return a_ + b_ * ((lo + hi) / 2);
}

double ExactScalar::to_double() const {
  if (b_ == 0) return qhm::to_double(a_);
  static const Rational kEps = Rational(1, Int(1) << 60);
  return qhm::to_double(approx(kEps));
}

namespace {

std::string rational_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

struct ScalarParser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

  Int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected digits");
    return Int(std::string(text.substr(start, pos - start)));
  }

  Rational rational() {
    Int num = integer();
    if (eat('/')) {
      Int den = integer();
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }

  bool keyword(std::string_view kw) {
    skip_ws();
    if (text.substr(pos, kw.size()) == kw) {
      pos += kw.size();
      return true;
    }
    return false;
  }

  // term := rational ['*' 'sqrt' '(' int ')'] | 'sqrt' '(' int ')'
  ExactScalar term(bool negative) {
    skip_ws();
    Rational coeff(1);
    bool have_coeff = false;
    if (!keyword("sqrt")) {
      coeff = rational();
      have_coeff = true;
      if (!eat('*')) {
        if (negative) coeff = -coeff;
        return ExactScalar(coeff);
      }
      if (!keyword("sqrt")) fail("expected sqrt after '*'");
    }
    (void)have_coeff;
    if (!eat('(')) fail("expected '(' after sqrt");
    skip_ws();
    size_t rad_pos = pos;
    Int d = integer();
    if (!eat(')')) fail("expected ')'");
    if (d > 1000000000) throw ParseError("radicand too large", rad_pos);
    long dl = d.convert_to<long>();
    if (dl > 1 && !is_squarefree(dl)) {
      throw ParseError("radicand " + std::to_string(dl) + " is not squarefree", rad_pos);
    }
    if (negative) coeff = -coeff;
    return ExactScalar(Rational(0), coeff, dl);
  }

  ExactScalar parse() {
    bool neg = false;
    skip_ws();
    if (eat('-')) neg = true;
    else (void)eat('+');
    ExactScalar acc = term(neg);
    for (;;) {
      skip_ws();
      if (pos >= text.size()) break;
      if (eat('+')) acc += term(false);
      else if (eat('-')) acc += term(true);
      else fail("unexpected character");
    }
    return acc;
  }
};

}  // namespace

std::string to_string(const ExactScalar& s) {
  const Rational &a = s.rational_part(), &b = s.surd_part();
  if (b == 0) return rational_str(a);
  std::string surd = rational_str(boost::multiprecision::abs(b)) + "*sqrt(" + std::to_string(s.field()) + ")";
  if (a == 0) return (b < 0 ? "-" : "") + surd;
  return rational_str(a) + (b < 0 ? "-" : "+") + surd;
}

ExactScalar parse_scalar(std::string_view text) {
  ScalarParser p{text};
  ExactScalar s = p.parse();
  return s;
}

}  // namespace qhm
