#include "doctest.h"
#include "qhm/measures.hpp"

#include <cmath>

#include "qhm/params.hpp"

using namespace qhm;

namespace {
ExactScalar es(long long n, long long d) { return ExactScalar(Rational(n, d)); }
}  // namespace

TEST_CASE("haar midpoint rule on trigonometric polynomials") {
  Measure haar = HaarMeasure{512};
  CHECK(integrate(haar, one()).real() == 1.0);  // exact: 512*512 copies of 1/512^2
  CHECK(integrate(haar, one()).imag() == 0.0);

  // nonzero frequencies integrate to zero (midpoint sums cancel exactly)
  CHECK(std::abs(integrate(haar, harmonic(Rational(3), Rational(-2), Rational(1, 7)))) < 1e-13);
  CHECK(std::abs(integrate(haar, harmonic(Rational(0), Rational(1), Rational(0)))) < 1e-13);

  // sin^2(pi x): mean 1/2 with no quadrature error at uniform nodes,
  // only the rounding of ~512^2 summands
  ExprPtr s2 = prod_of({abs_of(sinpi(Axis::X)), abs_of(sinpi(Axis::X))});
  CHECK(std::abs(integrate(haar, s2).real() - 0.5) < 1e-12);

  // |sin(pi x)|: smooth-periodic, midpoint converges fast; 2/pi to ~1e-6 at 512
  double v = integrate(haar, abs_of(sinpi(Axis::X))).real();
  CHECK(std::abs(v - 2.0 / M_PI) < 1e-5);
}

TEST_CASE("split integration handles strip integrands exactly") {
  Measure haar = HaarMeasure{512};
  ExprPtr chi = strip(ExactScalar(0), es(1, 3));
  // plain midpoint rule cannot see the 1/3 edge exactly...
  double plain = integrate(haar, chi).real();
  CHECK(std::abs(plain - 1.0 / 3.0) < 2e-3);
  // ...the split rule integrates each constant piece by its exact length
  CHECK(std::abs(integrate_splitx(haar, chi).real() - 1.0 / 3.0) < 1e-15);

  ExprPtr chi2 = strip(ExactScalar::surd(Rational(1, 4), 2), es(9, 10));
  double want = 0.9 - std::sqrt(2.0) / 4.0;
  CHECK(std::abs(integrate_splitx(haar, chi2).real() - want) < 1e-14);

  // smooth factors keep their quadrature accuracy under the split
  ExprPtr mix = prod_of({strip(ExactScalar(0), es(1, 2)), harmonic(Rational(0), Rational(2), Rational(0))});
  CHECK(std::abs(integrate_splitx(haar, mix)) < 1e-12);
}

TEST_CASE("atomic measures") {
  Params pr(1, es(1, 4), es(1, 6));  // 2mu = 1/2, 2nu = 1/3 -> orbit size lcm(2,3) = 6
  AtomicMeasure orb = orbit_measure(pr, Point{ExactScalar(0), ExactScalar(0)});
  CHECK(orb.points.size() == 6);
  for (const auto& w : orb.weights) CHECK(w == Rational(1, 6));
  CHECK(invariance_defect(orb, pr) == 0.0);

  // integrates constants to 1
  CHECK(std::abs(integrate(Measure{orb}, one()).real() - 1.0) < 1e-15);
  // e(6y) is constant 1 on the orbit {j/6}, e(y) averages to 0
  CHECK(std::abs(integrate(Measure{orb}, harmonic(Rational(0), Rational(6), Rational(0))).real() -
                 1.0) < 1e-14);
  CHECK(std::abs(integrate(Measure{orb}, harmonic(Rational(0), Rational(1), Rational(0)))) < 1e-14);

  // a lone atom is definitely not invariant (unless the shift is trivial)
  AtomicMeasure lone{{Point{ExactScalar(0), ExactScalar(0)}}, {Rational(1)}};
  CHECK(invariance_defect(lone, pr) > 1e-3);

  // malformed weights are rejected
  AtomicMeasure bad{{Point{ExactScalar(0), ExactScalar(0)}}, {Rational(1, 2)}};
  CHECK_THROWS_AS(invariance_defect(bad, pr), std::invalid_argument);
  AtomicMeasure mismatched{{Point{ExactScalar(0), ExactScalar(0)}}, {}};
  CHECK_THROWS_AS(invariance_defect(mismatched, pr), std::invalid_argument);
}

TEST_CASE("orbit measure needs rational parameters") {
  Params irr(1, ExactScalar::surd(Rational(1, 2), 2), es(1, 3));
  CHECK_THROWS_AS(orbit_measure(irr, Point{ExactScalar(0), ExactScalar(0)}), std::domain_error);
  // seed off the origin works and stays closed
  Params pr(1, es(1, 3), es(1, 5));
  AtomicMeasure orb = orbit_measure(pr, Point{es(1, 7), es(2, 7)});
  CHECK(orb.points.size() == 15);  // lcm(3, 5)
  CHECK(invariance_defect(orb, pr) == 0.0);
}

TEST_CASE("product measure invariance") {
  Params pr(1, ExactScalar::surd(Rational(1, 2), 2), es(1, 6));  // 2nu = 1/3
  ProductMeasure good{128, 3, ExactScalar(0)};                   // atoms {0, 1/3, 2/3}
  CHECK(invariance_defect(good, pr) == 0.0);
  ProductMeasure shifted_atoms{128, 3, es(1, 7)};  // {1/7, 1/7+1/3, ...} still closed
  CHECK(invariance_defect(shifted_atoms, pr) == 0.0);
  ProductMeasure wrong{128, 2, ExactScalar(0)};  // {0, 1/2} is not 1/3-shift closed
  CHECK(invariance_defect(wrong, pr) > 1e-3);

  // integrates y-harmonics by exact atom averaging, x by midpoints
  Measure m{good};
  CHECK(std::abs(integrate(m, harmonic(Rational(0), Rational(3), Rational(0))).real() - 1.0) <
        1e-14);
  CHECK(std::abs(integrate(m, harmonic(Rational(0), Rational(2), Rational(0)))) < 1e-14);
  CHECK(std::abs(integrate(m, harmonic(Rational(2), Rational(0), Rational(0)))) < 1e-13);
}
