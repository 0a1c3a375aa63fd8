#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qhm/crossed.hpp"
#include "qhm/element.hpp"

namespace qhm {

// Finite section of the left regular picture: base points m plus a p-cutoff.
struct TruncationSpec {
  std::vector<Point> grid;
  int cutoff = 3;  // indices |p| <= cutoff
};

// Dense (2P+1)x(2P+1) block at base point m; entry (p, j) is the extended
// value of component p-j at lambda_p m.  Blocks over distinct m act
// independently, so norms are taken blockwise.
Eigen::MatrixXcd theta_block(const QhmElement& a, const Point& m, int cutoff);

// Same section on the torus side (components evaluated mod 1).
Eigen::MatrixXcd theta_tilde_block(const CrossedElement& a, const Point& m, int cutoff);

double top_singular_value(const Eigen::MatrixXcd& block);

// Largest singular value over the grid blocks, one value per spec.  Specs
// must be nested (grids grow as sets, cutoffs do not decrease) so the values
// are lower bounds of the operator norm and non-decreasing along the list.
// Every cutoff must reach the element's support.
std::vector<double> norm_lower_bound(const QhmElement& a, const std::vector<TruncationSpec>& specs);

}  // namespace qhm
