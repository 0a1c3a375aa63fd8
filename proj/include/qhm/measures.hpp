#pragma once

#include "qhm/expr.hpp"

#include <variant>

namespace qhm {

// Probability measures on the torus used for averaging; each variant is
// invariant under the lambda shift (Haar always; the discrete ones exactly
// when their orbit data matches the parameters — checked, not assumed).
struct HaarMeasure {
  int n = 512;  // midpoint rule on an n x n uniform grid
};

struct AtomicMeasure {
  std::vector<Point> points;      // exact torus points
  std::vector<Rational> weights;  // positive, sum 1
};

// Haar in x times equal atoms {y0 + j/q : j = 0..q-1} in y.
struct ProductMeasure {
  int n = 512;
  long long q = 1;
  ExactScalar y0;
};

using Measure = std::variant<HaarMeasure, AtomicMeasure, ProductMeasure>;

Complex integrate(const Measure& m, const ExprPtr& f);

// x-direction split at the integrand's breakpoints; exact for integrands that
// are piecewise constant in x (strip masses), still correct elsewhere.
Complex integrate_splitx(const Measure& m, const ExprPtr& f);

// 0.0 when invariance under lambda_1 is certified exactly (Haar; atom sets
// that the shift permutes; product measures whose y-orbit is closed).
// Otherwise the measured defect over a small harmonic battery.
double invariance_defect(const Measure& m, const Params& pr);

// Equal-weight closed lambda-orbit of a seed point; requires 2*mu and 2*nu
// rational.
AtomicMeasure orbit_measure(const Params& pr, const Point& seed);

}  // namespace qhm
