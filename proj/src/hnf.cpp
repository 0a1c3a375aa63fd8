#include "qhm/hnf.hpp"

#include <stdexcept>
#include <utility>

namespace qhm {

namespace {

// g = s*a + t*b with g = gcd(a,b) >= 0
Int egcd(Int a, Int b, Int& s, Int& t) {
  Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = b;
    b = r;
    Int s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    Int t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

}  // namespace

std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> rows) {
  Int a = 0, b = 0;      // pivot row being accumulated, a >= 0
  std::vector<Int> ys;   // second coordinates left after clearing the first column
  for (const auto& r : rows) {
    if (r.size() != 2) throw std::invalid_argument("hnf_rows expects 2-vectors");
    Int x = r[0], y = r[1];
    if (x == 0) {
      if (y != 0) ys.push_back(y);
      continue;
    }
    if (a == 0) {
      if (x < 0) {
        x = -x;
        y = -y;
      }
      a = x;
      b = y;
      continue;
    }
    Int s, t;
    Int g = egcd(a, x, s, t);
    Int elim = (a / g) * y - (x / g) * b;  // first coordinate cancels
    b = s * b + t * y;
    a = g;
    if (elim != 0) ys.push_back(elim);
  }
  Int c = 0;
  for (const auto& y : ys) c = gcd(c, y);
  if (c < 0) c = -c;
  if (a == 0) {
    if (c == 0) return {};
    return {{Int(0), c}};
  }
  if (c == 0) return {{a, b}};
  Int bb = b % c;
  if (bb < 0) bb += c;
  return {{a, bb}, {Int(0), c}};
}

}  // namespace qhm
