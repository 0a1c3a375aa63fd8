#include "qhm/params.hpp"

namespace qhm {

namespace {
long joined_field(const ExactScalar& a, const ExactScalar& b) {
  if (a.field() == b.field()) return a.field();
  if (a.field() == 0) return b.field();
  if (b.field() == 0) return a.field();
  throw FieldMismatch("mu and nu lie in different quadratic fields");
}
}  // namespace

Params::Params(int c, const ExactScalar& mu, const ExactScalar& nu)
    : c_(c), mu_(mu.mod1()), nu_(nu.mod1()), d_(0) {
  if (c_ < 1) throw std::invalid_argument("c must be a positive integer");
  d_ = joined_field(mu_, nu_);
}

Point lambda_shift(const Params& pr, long long k, const Point& m) {
  Rational kk(k);
  return {m.x + pr.mu().scaled(2 * kk), m.y + pr.nu().scaled(2 * kk)};
}

Point sigma_shift(long long k, const Point& m) { return {m.x - ExactScalar(Rational(k)), m.y}; }

Point reduce_torus(const Point& m) { return {m.x.mod1(), m.y.mod1()}; }

bool in_strip_lattice(const Params& pr, const ExactScalar& t) {
  ExactScalar g = pr.two_mu();
  if (g.surd_part() != 0) {
    // k forced by the surd coordinate: t = k*g + j
    Rational k = t.surd_part() / g.surd_part();
    if (denominator(k) != 1) return false;
    Rational rem = t.rational_part() - k * g.rational_part();
    return denominator(rem) == 1;
  }
  if (t.surd_part() != 0) return false;
  const Rational& tm = g.rational_part();
  if (tm == 0) return denominator(t.rational_part()) == 1;
  // lattice (a/q)Z + Z = (1/q)Z for reduced a/q
  return denominator(Rational(t.rational_part() * denominator(tm))) == 1;
}

}  // namespace qhm
