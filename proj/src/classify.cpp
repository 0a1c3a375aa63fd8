#include "qhm/classify.hpp"

#include <cstdlib>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qhm {

Mat2 mat_mul(const Mat2& l, const Mat2& r) {
  return Mat2{l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
              l.c * r.b + l.d * r.d};
}

Mat2 word_to_mat(const std::string& word) {
  Mat2 m;
  for (char ch : word) {
    switch (ch) {
      case 'S': m = mat_mul(kGenS, m); break;
      case 'T': m = mat_mul(kGenT, m); break;
      case 'R': m = mat_mul(kGenR, m); break;
      default: throw std::invalid_argument("generator letters are S, T, R");
    }
  }
  return m;
}

std::pair<ExactScalar, ExactScalar> apply_gl2z(const Mat2& g, const ExactScalar& mu,
                                               const ExactScalar& nu) {
  if (std::llabs(g.det()) != 1) throw std::invalid_argument("matrix must have determinant +-1");
  ExactScalar m2 = mu.scaled(Rational(g.a)) + nu.scaled(Rational(g.b));
  ExactScalar n2 = mu.scaled(Rational(g.c)) + nu.scaled(Rational(g.d));
  return {m2.mod1(), n2.mod1()};
}

bool brute_force_orbit_rational(long long q, std::pair<long long, long long> pt,
                                std::pair<long long, long long> pt2) {
  if (q < 1) throw std::invalid_argument("modulus must be positive");
  if (q > 4096) throw std::invalid_argument("orbit search capped at modulus 4096");
  auto norm = [q](long long v) { return ((v % q) + q) % q; };
  long long a0 = norm(pt.first), b0 = norm(pt.second);
  long long a1 = norm(pt2.first), b1 = norm(pt2.second);
  std::vector<char> seen(static_cast<size_t>(q) * q, 0);
  auto idx = [q](long long a, long long b) { return static_cast<size_t>(a) * q + b; };
  std::deque<std::pair<long long, long long>> queue{{a0, b0}};
  seen[idx(a0, b0)] = 1;
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    if (a == a1 && b == b1) return true;
    std::pair<long long, long long> next[3] = {
        {norm(-b), a},     // rotation
        {norm(a + b), b},  // shear
        {a, norm(-b)},     // reflection
    };
    for (const auto& [na, nb] : next) {
      if (!seen[idx(na, nb)]) {
        seen[idx(na, nb)] = 1;
        queue.emplace_back(na, nb);
      }
    }
  }
  return false;
}

std::string to_string(const TraceRangeGroup& g) {
  std::ostringstream os;
  if (g.d == 0) {
    const Int& h = g.rows[0][0];
    if (h == g.D) {
      os << "Z";
    } else {
      os << "(" << h << "/" << g.D << ")Z";
    }
    return os.str();
  }
  os << "(1/" << g.D << ")<(" << g.rows[0][0] << "," << g.rows[0][1] << "),(0," << g.rows[1][1]
     << ")> over {1,sqrt(" << g.d << ")}";
  return os.str();
}

namespace {

// exact denominator-q coordinates of a rational parameter in [0,1)
long long coord_mod_q(const ExactScalar& s, long long q) {
  Rational r = s.rational_part() * q;
  Int num = numerator(r);
  Int rem = num % q;
  if (rem < 0) rem += q;
  return rem.convert_to<long long>();
}

}  // namespace

IsoVerdict decide_isomorphism(const Params& p1, const Params& p2) {
  if (p1.c() != p2.c()) {
    std::ostringstream os;
    os << "K0 torsion differs: Z^3 (+) Z_" << p1.c() << " vs Z^3 (+) Z_" << p2.c();
    return {IsoKind::NotIsomorphic, false, os.str()};
  }
  bool all_rational = p1.mu().is_rational() && p1.nu().is_rational() && p2.mu().is_rational() &&
                      p2.nu().is_rational();
  if (all_rational) {
    Int qq = int_lcm(int_lcm(Int(denominator(p1.mu().rational_part())),
                             Int(denominator(p1.nu().rational_part()))),
                     int_lcm(Int(denominator(p2.mu().rational_part())),
                             Int(denominator(p2.nu().rational_part()))));
    long long q = qq.convert_to<long long>();
    bool orbit = brute_force_orbit_rational(
        q, {coord_mod_q(p1.mu(), q), coord_mod_q(p1.nu(), q)},
        {coord_mod_q(p2.mu(), q), coord_mod_q(p2.nu(), q)});
    std::ostringstream os;
    os << "all parameters rational: no isomorphism verdict; mod-" << q << " orbits "
       << (orbit ? "coincide" : "differ");
    return {IsoKind::RationalCaseOrbitOnly, orbit, os.str()};
  }
  TraceRangeGroup g1 = trace_range(p1);
  TraceRangeGroup g2 = trace_range(p2);
  if (g1.d != g2.d) {
    std::ostringstream os;
    os << "trace ranges lie in different fields: " << to_string(g1) << " vs " << to_string(g2);
    return {IsoKind::NotIsomorphic, false, os.str()};
  }
  if (group_equal(g1, g2)) {
    return {IsoKind::Isomorphic, false, "trace ranges coincide: " + to_string(g1)};
  }
  return {IsoKind::NotIsomorphic, false,
          "trace ranges differ: " + to_string(g1) + " vs " + to_string(g2)};
}

}  // namespace qhm
