#pragma once

#include "qhm/element.hpp"

namespace qhm {

// Finitely supported sequence p -> function on the torus [0,1)^2 (both
// coordinates reduced mod 1 before evaluation).  This is the codomain of the
// embedding; products use the crossed-product convolution over the lambda
// shift.
class CrossedElement {
 public:
  CrossedElement(Params params, std::map<int, ExprPtr> components);
  static CrossedElement single(const Params& params, int p, ExprPtr f);
  static CrossedElement unit(const Params& params);

  const Params& params() const { return params_; }
  const std::map<int, ExprPtr>& components() const { return comps_; }
  ExprPtr component(int p) const;
  std::vector<int> support() const;
  int max_abs_support() const;

  Complex value(int p, const Point& m) const;        // reduces m into the torus
  Complex value(int p, double x, double y) const;

 private:
  Params params_;
  std::map<int, ExprPtr> comps_;
};

// u(p,k) at y: exp(2 pi i c k p (y - p nu)); turns variant is exact.
ExactScalar cocycle_u_turns(const Params& pr, int p, long long k, const ExactScalar& y);
Complex cocycle_u(const Params& pr, int p, long long k, const ExactScalar& y);

// Lambda-cocycle H_p.  H_1(x,y) = exp(2 pi i c floor(x) (y - nu)), H_0 = 1,
// and H_p is the ordered product of lambda-translates of H_1 (conjugated for
// p < 0).  Turns are accumulated exactly.
ExactScalar cocycle_h_turns(const Params& pr, int p, const Point& m);
Complex cocycle_h(const Params& pr, int p, const Point& m);

// Component-wise multiplication by H_p, realized inside the expression tree;
// the result's component p equals H_p * a_p on F.
CrossedElement embed(const QhmElement& a);

// Crossed-product convolution and involution on the torus side.
CrossedElement cp_multiply(const CrossedElement& a, const CrossedElement& b);
CrossedElement cp_adjoint(const CrossedElement& a);

// Torus translate of a component, wrapped in x via strip indicators.
ExprPtr torus_shifted(const ExprPtr& f, const ExactScalar& u, const ExactScalar& v);

// Strip/floor breakpoints of every component must land in 2*mu*Z + Z (mod 1);
// returns the offending positions (empty when the element is in the allowed
// algebra).
std::vector<ExactScalar> strip_lattice_violations(const CrossedElement& a);

}  // namespace qhm
