#include "nilgrp/group.hpp"

#include "nilgrp/errors.hpp"

namespace nilgrp {

GroupElement mul(const GroupElement& x, const GroupElement& y) { return GroupElement(bch(x.log(), y.log())); }

GroupElement inverse(const GroupElement& x) { return GroupElement(-x.log()); }

GroupElement rational_power(const GroupElement& x, const Rational& q) { return GroupElement(x.log() * q); }

GroupElement power(const GroupElement& x, std::int64_t k) { return rational_power(x, Rational(k)); }

GroupElement commutator(const GroupElement& x, const GroupElement& y) {
  return mul(mul(x, y), mul(inverse(x), inverse(y)));
}

GroupElement nested_commutator(const BracketPattern& alpha, const std::vector<GroupElement>& args) {
  if (alpha.arity() < 2) throw InvalidArgument("commutator pattern needs arity >= 2");
  if (args.empty()) throw InvalidArgument("no commutator arguments");
  const int L = args.front().log().algebra().num_generators();
  if (static_cast<int>(args.size()) != L) throw ContextMismatch("argument count must equal L");
  for (int i : alpha.indices)
    if (i < 1 || i > L) throw ContextMismatch("pattern index out of range 1..L");
  GroupElement out = args[alpha.indices.back() - 1];
  for (int pos = alpha.arity() - 2; pos >= 0; --pos) out = commutator(args[alpha.indices[pos] - 1], out);
  return out;
}

}  // namespace nilgrp
