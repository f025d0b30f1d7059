#pragma once

// Exact-arithmetic LLL lattice reduction (integral Gram-Schmidt variant).
// Row vectors over Z; all bookkeeping in exact integers, so the reduction is
// deterministic and immune to floating-point drift. Dimensions here are tiny
// (a couple dozen rows at most), which keeps the exact version fast enough.

#include <gmpxx.h>

#include <vector>

namespace cyclolab {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;

// Reduces `basis` in place with Lovasz parameter delta = delta_num/delta_den.
// Rows must be linearly independent.
void lll_reduce(ZMat& basis, long delta_num = 99, long delta_den = 100);

mpz_class dot(const ZVec& a, const ZVec& b);

}  // namespace cyclolab
