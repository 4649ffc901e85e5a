#include "nilgrp/matrix.hpp"

#include <optional>

#include "nilgrp/errors.hpp"

namespace nilgrp {

NilpotentMatrix::NilpotentMatrix(RationalMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InvalidArgument("nilpotent matrix must be square");
  for (std::size_t r = 0; r < m_.rows(); ++r)
    for (std::size_t c = 0; c <= r; ++c)
      if (!m_(r, c).is_zero()) throw InvalidArgument("matrix is not strictly upper triangular");
}

UnipotentMatrix::UnipotentMatrix(RationalMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InvalidArgument("unipotent matrix must be square");
  for (std::size_t r = 0; r < m_.rows(); ++r) {
    if (m_(r, r).raw() != 1) throw InvalidArgument("unipotent matrix needs unit diagonal");
    for (std::size_t c = 0; c < r; ++c)
      if (!m_(r, c).is_zero()) throw InvalidArgument("matrix is not upper triangular");
  }
}

bool UnipotentMatrix::is_identity() const { return m_ == RationalMatrix::identity(dim()); }

bool UnipotentMatrix::has_integer_entries() const {
  for (const auto& x : m_.data())
    if (!x.is_integer()) return false;
  return true;
}

bool canonical_less(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (da[i] < db[i]) return true;
    if (db[i] < da[i]) return false;
  }
  return false;
}

std::size_t hash_matrix(const RationalMatrix& m) {
  std::size_t h = m.rows();
  for (const auto& x : m.data()) h = h * 0x100000001B3ull ^ x.hash();
  return h;
}

UnipotentMatrix mat_exp(const NilpotentMatrix& n) {
  const std::size_t d = n.dim();
  RationalMatrix result = RationalMatrix::identity(d);
  RationalMatrix term = RationalMatrix::identity(d);
  for (std::size_t k = 1; k < d; ++k) {
    term = term * n.matrix();
    term *= Rational(1, static_cast<std::int64_t>(k));
    if (term.is_zero()) break;
    result += term;
  }
  return UnipotentMatrix(std::move(result), UnipotentMatrix::Trusted{});
}

NilpotentMatrix mat_log(const UnipotentMatrix& m) {
  const std::size_t d = m.dim();
  const RationalMatrix x = m.matrix() - RationalMatrix::identity(d);
  RationalMatrix result(d, d);
  RationalMatrix power = x;
  for (std::size_t k = 1; k < d; ++k) {
    if (power.is_zero()) break;
    result += power * Rational(k % 2 == 1 ? 1 : -1, static_cast<std::int64_t>(k));
    power = power * x;
  }
  return NilpotentMatrix(std::move(result));
}

NilpotentMatrix lie_bracket(const NilpotentMatrix& a, const NilpotentMatrix& b) {
  return NilpotentMatrix(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

UnipotentMatrix mul(const UnipotentMatrix& a, const UnipotentMatrix& b) {
  return UnipotentMatrix(a.matrix() * b.matrix(), UnipotentMatrix::Trusted{});
}

UnipotentMatrix inverse(const UnipotentMatrix& m) {
  // (I + X)^-1 = sum (-X)^k, finite since X is nilpotent.
  const std::size_t d = m.dim();
  const RationalMatrix neg = (m.matrix() - RationalMatrix::identity(d)) * Rational(-1);
  RationalMatrix result = RationalMatrix::identity(d);
  RationalMatrix power = RationalMatrix::identity(d);
  for (std::size_t k = 1; k < d; ++k) {
    power = power * neg;
    if (power.is_zero()) break;
    result += power;
  }
  return UnipotentMatrix(std::move(result), UnipotentMatrix::Trusted{});
}

UnipotentMatrix power(const UnipotentMatrix& m, std::int64_t k) {
  UnipotentMatrix base = k < 0 ? inverse(m) : m;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  UnipotentMatrix result = UnipotentMatrix::identity(m.dim());
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

UnipotentMatrix commutator(const UnipotentMatrix& a, const UnipotentMatrix& b) {
  return mul(mul(a, b), mul(inverse(a), inverse(b)));
}

NilpotentMatrix substitute(const LieElement& x, const std::vector<NilpotentMatrix>& assignment,
                           DimensionCheck check) {
  const LieAlgebra& alg = x.algebra();
  if (static_cast<int>(assignment.size()) != alg.num_generators())
    throw ContextMismatch("assignment must bind every generator");
  const std::size_t d = assignment.front().dim();
  for (const auto& a : assignment)
    if (a.dim() != d) throw ContextMismatch("assignment matrices differ in dimension");
  if (check == DimensionCheck::kStrict && static_cast<int>(d) - 1 < alg.step())
    throw InvalidArgument("matrix dimension too small for the step in strict mode");

  const auto& basis = alg.basis();
  std::vector<std::optional<NilpotentMatrix>> images(basis.size());
  std::function<const NilpotentMatrix&(int)> image = [&](int i) -> const NilpotentMatrix& {
    if (!images[i]) {
      const HallWord& hw = basis[i];
      images[i] = hw.is_leaf() ? assignment[hw.letters[0]] : lie_bracket(image(hw.left), image(hw.right));
    }
    return *images[i];
  };
  NilpotentMatrix out = NilpotentMatrix::zero(d);
  for (const auto& [idx, c] : x.terms()) out += image(idx) * c;
  return out;
}

NilpotentMatrix random_nilpotent(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> value(-2, 2);
  std::uniform_int_distribution<int> halve(0, 1);
  RationalMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = r + 1; c < dim; ++c) m(r, c) = Rational(value(rng), halve(rng) ? 2 : 1);
  return NilpotentMatrix(std::move(m));
}

}  // namespace nilgrp
