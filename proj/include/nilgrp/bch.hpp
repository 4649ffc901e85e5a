#pragma once

#include <vector>

#include "nilgrp/free_lie_algebra.hpp"

namespace nilgrp {

// log(exp X exp Y), truncated at the step of the shared context.
LieElement bch(const LieElement& x, const LieElement& y);

// log(x_1 x_2 ... x_k) as a left fold of bch. Throws InvalidArgument on an
// empty list.
LieElement multi_bch(const std::vector<LieElement>& xs);

// log(e^a e^b e^-a) = b + sum_{j=1}^{n-1} ad(a)^j b / j!.
LieElement conjugation_log(const LieElement& a, const LieElement& b);

// Coefficients t_alpha with X + Y - sum t_alpha h_alpha(X, Y) = bch(X, Y),
// for the two-generator algebra.
struct BchTailTable {
  AlgebraContext context;
  PatternCoeffs entries;
};

BchTailTable bch_tail_table(const LieAlgebra& algebra);

}  // namespace nilgrp
