#pragma once

#include <string>
#include <utility>

#include "qhm/params.hpp"
#include "qhm/traces.hpp"

namespace qhm {

// Integer 2x2 matrix ((a,b),(c,d)); the maps used here all have det = +-1.
struct Mat2 {
  long long a = 1, b = 0, c = 0, d = 1;
  long long det() const { return a * d - b * c; }
  bool operator==(const Mat2&) const = default;
};

Mat2 mat_mul(const Mat2& l, const Mat2& r);

inline constexpr Mat2 kGenS{0, -1, 1, 0};  // rotation, det +1
inline constexpr Mat2 kGenT{1, 1, 0, 1};   // shear, det +1
inline constexpr Mat2 kGenR{1, 0, 0, -1};  // reflection, det -1

// Matrix realizing sequential application of the letters: "ST" acts as S
// first, then T, so word_to_mat("ST") = T*S.  Letters outside {S,T,R} throw.
Mat2 word_to_mat(const std::string& word);

// (mu, nu) -> (a*mu + b*nu mod 1, c*mu + d*nu mod 1); requires |det| = 1.
std::pair<ExactScalar, ExactScalar> apply_gl2z(const Mat2& g, const ExactScalar& mu,
                                               const ExactScalar& nu);

enum class IsoKind { Isomorphic, NotIsomorphic, RationalCaseOrbitOnly };

struct IsoVerdict {
  IsoKind kind;
  // For RationalCaseOrbitOnly: whether the parameter pairs share an orbit of
  // the mod-q linear action (no isomorphism conclusion either way).
  bool orbit_equal = false;
  std::string justification;
};

// Decision procedure: distinct c is an immediate obstruction (K_0 torsion);
// with at least one irrational parameter the verdict is equality of the
// canonical trace-range groups; with all parameters rational only the orbit
// fact is reported.
IsoVerdict decide_isomorphism(const Params& p1, const Params& p2);

// Exhaustive BFS over the orbit of pt in (Z/q)^2 under S, T, R; exact.
// q is capped (memory) at 4096.
bool brute_force_orbit_rational(long long q, std::pair<long long, long long> pt,
                                std::pair<long long, long long> pt2);

// Readable canonical form, e.g. "(1/6)Z" or "(1/3)<(1,0),(0,3)> over {1,sqrt(2)}".
std::string to_string(const TraceRangeGroup& g);

}  // namespace qhm
