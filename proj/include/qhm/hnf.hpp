#pragma once

#include <vector>

#include "qhm/rational.hpp"

namespace qhm {

// Row Hermite normal form of the sublattice of Z^2 spanned by the given
// integer 2-vectors.  Zero rows are ignored.  Result:
//   rank 0 -> {}
//   rank 1 -> {(a,b)} with a>0, or a==0 and b>0
//   rank 2 -> {(a,b),(0,c)} with a>0, c>0, 0<=b<c
std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> rows);

}  // namespace qhm
