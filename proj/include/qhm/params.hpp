#pragma once

#include "qhm/exact_scalar.hpp"

namespace qhm {

// (x, y): x along the line, y on the circle; both kept exact.
struct Point {
  ExactScalar x, y;
};

// Deformation data (c, mu, nu).  mu and nu are reduced mod 1 on construction;
// both must live in Q or in one common quadratic field (tagged by d()).
class Params {
 public:
  Params(int c, const ExactScalar& mu, const ExactScalar& nu);

  int c() const { return c_; }
  const ExactScalar& mu() const { return mu_; }
  const ExactScalar& nu() const { return nu_; }
  long d() const { return d_; }
  ExactScalar two_mu() const { return mu_.scaled(2); }
  ExactScalar two_nu() const { return nu_.scaled(2); }

  bool operator==(const Params& o) const { return c_ == o.c_ && mu_ == o.mu_ && nu_ == o.nu_; }

 private:
  int c_;
  ExactScalar mu_, nu_;
  long d_;
};

// (x, y) -> (x + 2k*mu, y + 2k*nu)
Point lambda_shift(const Params& pr, long long k, const Point& m);
// (x, y) -> (x - k, y)
Point sigma_shift(long long k, const Point& m);
// reduce both coordinates mod 1
Point reduce_torus(const Point& m);

// Is t in 2*mu*Z + Z?  Exact.
bool in_strip_lattice(const Params& pr, const ExactScalar& t);

}  // namespace qhm
