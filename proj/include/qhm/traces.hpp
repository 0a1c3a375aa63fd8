#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qhm/element.hpp"
#include "qhm/measures.hpp"

namespace qhm {

// A trace was requested against a measure whose shift-invariance check fails;
// carries the measured defect.
class NonInvariantMeasure : public std::invalid_argument {
 public:
  explicit NonInvariantMeasure(double defect);
  double defect() const { return defect_; }

 private:
  double defect_;
};

// Conditional expectation onto functions of (x,y): the p = 0 component,
// the zero function when absent.
ExprPtr cond_expect(const QhmElement& a);

// tau(a) = integral of the p = 0 component.  The measure's invariance defect
// must not exceed invariance_tol, else NonInvariantMeasure is thrown.
Complex trace_value(const QhmElement& a, const Measure& m, double invariance_tol = 1e-9);

// |tau(a b) - tau(b a)|
double tracial_defect(const QhmElement& a, const QhmElement& b, const Measure& m);

// Mass of the vertical strip [0, 2*mu) x T.  The analytic value is the strip
// width; `exact_mass` recomputes it from the measure alone (segment lengths of
// the x-marginal, or an exact weighted atom count), `quadrature` is the
// double-precision path.  For mu > 1/2 the strip covers the whole torus; the
// result is flagged `wrapped` and the width saturates at 1.
struct StripMass {
  ExactScalar width;                      // min(2*mu, 1)
  bool wrapped = false;                   // 2*mu > 1
  std::optional<ExactScalar> exact_mass;  // exact evaluation when available
  Complex quadrature{0.0, 0.0};
};

StripMass strip_mass(const Measure& m, const Params& pr);

// Additive subgroup of R spanned by 1 and finitely many generators from one
// quadratic field, presented canonically as (1/D) * (row lattice of H) in
// coordinates {1, sqrt(d)}.  H is 1x1 when every generator is rational
// (d == 0), otherwise a 2x2 upper-triangular HNF matrix; gcd(D, entries) = 1.
struct TraceRangeGroup {
  long d = 0;
  Int D = 1;
  std::vector<std::vector<Int>> rows;

  bool contains(const ExactScalar& s) const;
  bool operator==(const TraceRangeGroup& o) const = default;
};

// Canonical form of Z + g_1 Z + ... + g_n Z (the 1 is adjoined implicitly).
TraceRangeGroup span_group(std::vector<ExactScalar> gens);

// Z + 2*mu*Z + 2*nu*Z
TraceRangeGroup trace_range(const Params& pr);

// Equality by mutual inclusion of the canonical bases.  Throws FieldMismatch
// when the groups carry different nonzero field tags; agreement with
// operator== is what makes the canonical form canonical.
bool group_equal(const TraceRangeGroup& a, const TraceRangeGroup& b);

// Pairing value for a K_1 loop specified by its winding profile: breakpoints
// cut [0,1) into pieces and windings lists one integer per piece (so
// windings.size() == breakpoints.size() + 1).  Breakpoints must be strictly
// increasing members of (2*mu*Z + Z) in (0,1), else std::domain_error.
// All windings equal to n0 -> value 2*n0*nu (not reduced mod 1); any
// disagreement -> nullopt.
std::optional<ExactScalar> delta_lambda_winding(const Params& pr,
                                                const std::vector<ExactScalar>& breakpoints,
                                                const std::vector<long long>& windings);

// Whether {1, 2*mu, 2*nu} is linearly independent over Q.  A single quadratic
// field has Q-dimension 2, so with scalars confined to one field this is
// constantly false; implemented as an honest rank computation anyway.
bool rationally_independent(const Params& pr);

// The constructively invariant measures for these parameters: Haar always;
// the atom orbit when both 2*mu and 2*nu are rational; Haar_x x (finite
// y-orbit) when only 2*nu is rational.
std::vector<Measure> invariant_measures(const Params& pr, int haar_n = 512);

}  // namespace qhm
