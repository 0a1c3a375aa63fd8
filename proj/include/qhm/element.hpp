#pragma once

#include "qhm/expr.hpp"

#include <map>

namespace qhm {

// Finitely supported sequence p -> component function on the fundamental
// domain F = [0,1) x [0,1).  Values off F come from the quasi-periodic
// extension rule (see extended()); the y coordinate is a circle coordinate
// and is reduced mod 1 on entry.
class QhmElement {
 public:
  QhmElement(Params params, std::map<int, ExprPtr> components);
  static QhmElement single(const Params& params, int p, ExprPtr f);
  static QhmElement unit(const Params& params);

  const Params& params() const { return params_; }
  const std::map<int, ExprPtr>& components() const { return comps_; }
  ExprPtr component(int p) const;  // zero() when absent
  std::vector<int> support() const;
  int max_abs_support() const;  // 0 for the zero element

  // value of component p at a point of F (no extension)
  Complex value(int p, const Point& m) const { return eval(component(p), m); }

  // quasi-periodic extension: x arbitrary, y reduced mod 1;
  // value = exp(-2 pi i c p floor(x) (y - p nu)) * comp_p(x - floor(x), y)
  Complex extended(int p, const Point& m) const;
  Complex extended(int p, double x, double y) const;

  QhmElement operator+(const QhmElement& o) const;

 private:
  Params params_;
  std::map<int, ExprPtr> comps_;
};

// Convolution product: (a*b)_p(m) = sum_q a_q(m) * b~_{p-q}(lambda_{-q} m),
// where b~ is the quasi-periodic extension.  Support is contained in the
// sumset of the factors' supports.
QhmElement multiply(const QhmElement& a, const QhmElement& b);

// Involution: (a^*)_p(m) = conj(a~_{-p}(lambda_{-p} m)).
QhmElement adjoint(const QhmElement& a);

// Shifted evaluation of a component through the extension rule, rebuilt as an
// expression on F: result(x,y) = f~_idx(x+u, y+v) for (x,y) in F.
ExprPtr extension_shifted(const Params& pr, const ExprPtr& f, int idx, const ExactScalar& u, const ExactScalar& v);

// Partition pair for component index p: d1 = |sin pi x|, d2 = |cos pi x| with
// the covariance-matching phase on [1/2, 1).  |d1|^2 + |d2|^2 = 1 on F and
// both glue continuously across the seam.
std::pair<ExprPtr, ExprPtr> delta_pair(const Params& pr, int p);

// For a single-component element f*delta_p: factors (a1, d1, a2, d2) with
// a1*d1 + a2*d2 == f*delta_p; a_i sit at p=0, d_i at p.
struct DeltaDecomposition {
  QhmElement a1, d1, a2, d2;
};
DeltaDecomposition decompose_delta(const QhmElement& e, int p);

// max |u(p,k)(m) * a_p(sigma_{-k} m) - a_p(m)| over the given probes; the
// extension rule satisfies this identically, so nonzero defect flags a bug
// (or a hand-built non-covariant family).
double covariance_defect(const QhmElement& a, const std::vector<Point>& probes, int k_range);

// One-sided seam diagnostic for component p: sup over sampled y of
// |a_p(1-h, y) - exp(-2 pi i c p (y - p nu)) a_p(0, y)| at h = 1e-7.
// Values above ~1e-4 mean the component does not extend continuously
// (strip indicators are the usual, legitimate case).
double seam_gap(const QhmElement& a, int p, int y_samples = 64);

}  // namespace qhm
