#include "nilgrp/bch.hpp"

#include "nilgrp/errors.hpp"

namespace nilgrp {

LieElement bch(const LieElement& x, const LieElement& y) {
  if (!(x.algebra().context() == y.algebra().context()))
    throw ContextMismatch("bch of elements from different contexts");
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const LieAlgebra& alg = x.algebra();
  // Work in the truncated free associative algebra: exp, multiply, log, then
  // read the (necessarily Lie) result back in the Hall basis.
  AssocPoly product = exp_series(alg.to_assoc(x)) * exp_series(alg.to_assoc(y));
  product -= AssocPoly::one(alg.num_generators(), alg.step());
  return alg.from_assoc(log1p_series(product));
}

LieElement multi_bch(const std::vector<LieElement>& xs) {
  if (xs.empty()) throw InvalidArgument("multi_bch of an empty list");
  LieElement acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = bch(acc, xs[i]);
  return acc;
}

LieElement conjugation_log(const LieElement& a, const LieElement& b) {
  if (!(a.algebra().context() == b.algebra().context()))
    throw ContextMismatch("conjugation of elements from different contexts");
  LieElement out = b;
  LieElement term = b;
  for (int j = 1; j < a.algebra().step(); ++j) {
    term = bracket(a, term) * Rational(1, j);
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

BchTailTable bch_tail_table(const LieAlgebra& algebra) {
  if (algebra.num_generators() != 2) throw InvalidArgument("bch tail table needs exactly two generators");
  const LieElement x = algebra.generator(0);
  const LieElement y = algebra.generator(1);
  const LieElement defect = x + y - bch(x, y);
  BchTailTable table{algebra.context(), {}};
  for (int d = 2; d <= algebra.step(); ++d) table.entries.merge(rightnormed_decomposition(defect, d));
  return table;
}

}  // namespace nilgrp
