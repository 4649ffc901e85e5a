#pragma once

#include <cstdint>
#include <vector>

#include "nilgrp/bch.hpp"
#include "nilgrp/free_lie_algebra.hpp"

namespace nilgrp {

// Element of the free nilpotent group in exponential coordinates of the
// first kind: the element is exp(log_coords).
class GroupElement {
 public:
  explicit GroupElement(LieElement log_coords) : log_(std::move(log_coords)) {}

  static GroupElement identity(const LieAlgebra& algebra) { return GroupElement(algebra.zero()); }
  static GroupElement generator(const LieAlgebra& algebra, int index) {
    return GroupElement(algebra.generator(index));
  }

  const LieElement& log() const { return log_; }
  bool is_identity() const { return log_.is_zero(); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.log_ == b.log_; }

 private:
  LieElement log_;
};

GroupElement mul(const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupElement& x);
// x^q = exp(q log x).
GroupElement rational_power(const GroupElement& x, const Rational& q);
GroupElement power(const GroupElement& x, std::int64_t k);
// x y x^-1 y^-1.
GroupElement commutator(const GroupElement& x, const GroupElement& y);
// c(x_{alpha(1)}, c(x_{alpha(2)}, ... c(x_{alpha(j-1)}, x_{alpha(j)}))).
// Throws InvalidArgument for arity < 2.
GroupElement nested_commutator(const BracketPattern& alpha, const std::vector<GroupElement>& args);

}  // namespace nilgrp
