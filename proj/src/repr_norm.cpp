#include "qhm/repr_norm.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <stdexcept>

namespace qhm {

Eigen::MatrixXcd theta_block(const QhmElement& a, const Point& m, int cutoff) {
  if (cutoff < a.max_abs_support()) {
    throw std::invalid_argument("cutoff must reach the element's support");
  }
  int n = 2 * cutoff + 1;
  Eigen::MatrixXcd block(n, n);
  for (int p = -cutoff; p <= cutoff; ++p) {
    Point mp = lambda_shift(a.params(), p, m);
    for (int j = -cutoff; j <= cutoff; ++j) {
      block(p + cutoff, j + cutoff) = a.extended(p - j, mp);
    }
  }
  return block;
}

Eigen::MatrixXcd theta_tilde_block(const CrossedElement& a, const Point& m, int cutoff) {
  if (cutoff < a.max_abs_support()) {
    throw std::invalid_argument("cutoff must reach the element's support");
  }
  int n = 2 * cutoff + 1;
  Eigen::MatrixXcd block(n, n);
  for (int p = -cutoff; p <= cutoff; ++p) {
    Point mp = reduce_torus(lambda_shift(a.params(), p, m));
    for (int j = -cutoff; j <= cutoff; ++j) {
      block(p + cutoff, j + cutoff) = a.value(p - j, mp);
    }
  }
  return block;
}

double top_singular_value(const Eigen::MatrixXcd& block) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
  return svd.singularValues()(0);
}

std::vector<double> norm_lower_bound(const QhmElement& a,
                                     const std::vector<TruncationSpec>& specs) {
  for (size_t i = 0; i + 1 < specs.size(); ++i) {
    if (specs[i].cutoff > specs[i + 1].cutoff) {
      throw std::invalid_argument("cutoffs must not decrease along the spec list");
    }
    for (const Point& m : specs[i].grid) {
      bool found = false;
      for (const Point& m2 : specs[i + 1].grid) {
        if (m.x == m2.x && m.y == m2.y) {
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("grids must be nested along the spec list");
    }
  }
  std::vector<double> bounds;
  bounds.reserve(specs.size());
  for (const auto& spec : specs) {
    if (spec.grid.empty()) throw std::invalid_argument("truncation grid must be nonempty");
    double best = 0.0;
    for (const Point& m : spec.grid) {
      best = std::max(best, top_singular_value(theta_block(a, m, spec.cutoff)));
    }
    bounds.push_back(best);
  }
  return bounds;
}

}  // namespace qhm
