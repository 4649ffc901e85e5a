#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "nilgrp/free_lie_algebra.hpp"
#include "nilgrp/linear_algebra.hpp"

namespace nilgrp {

// Strictly upper-triangular rational matrix; an element of the Lie algebra
// of UT(d, Q).
class NilpotentMatrix {
 public:
  explicit NilpotentMatrix(RationalMatrix m);  // throws InvalidArgument unless strictly upper
  static NilpotentMatrix zero(std::size_t dim) { return NilpotentMatrix(RationalMatrix(dim, dim)); }

  std::size_t dim() const { return m_.rows(); }
  const RationalMatrix& matrix() const { return m_; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  bool is_zero() const { return m_.is_zero(); }

  NilpotentMatrix& operator+=(const NilpotentMatrix& o) { m_ += o.m_; return *this; }
  NilpotentMatrix& operator-=(const NilpotentMatrix& o) { m_ -= o.m_; return *this; }
  NilpotentMatrix& operator*=(const Rational& s) { m_ *= s; return *this; }
  friend NilpotentMatrix operator+(NilpotentMatrix a, const NilpotentMatrix& b) { return a += b; }
  friend NilpotentMatrix operator-(NilpotentMatrix a, const NilpotentMatrix& b) { return a -= b; }
  friend NilpotentMatrix operator*(NilpotentMatrix a, const Rational& s) { return a *= s; }
  friend NilpotentMatrix operator*(const Rational& s, NilpotentMatrix a) { return a *= s; }
  friend bool operator==(const NilpotentMatrix&, const NilpotentMatrix&) = default;

 private:
  RationalMatrix m_;
};

// Upper-triangular rational matrix with unit diagonal.
class UnipotentMatrix {
 public:
  explicit UnipotentMatrix(RationalMatrix m);  // throws InvalidArgument unless unipotent upper
  static UnipotentMatrix identity(std::size_t dim) { return UnipotentMatrix(RationalMatrix::identity(dim)); }

  std::size_t dim() const { return m_.rows(); }
  const RationalMatrix& matrix() const { return m_; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  bool is_identity() const;
  bool has_integer_entries() const;

  friend bool operator==(const UnipotentMatrix&, const UnipotentMatrix&) = default;

 private:
  struct Trusted {};
  UnipotentMatrix(RationalMatrix m, Trusted) : m_(std::move(m)) {}
  friend UnipotentMatrix mat_exp(const NilpotentMatrix& n);
  friend UnipotentMatrix mul(const UnipotentMatrix& a, const UnipotentMatrix& b);
  friend UnipotentMatrix inverse(const UnipotentMatrix& m);

  RationalMatrix m_;
};

// Row-major entry-wise order; the canonical order for reports.
bool canonical_less(const RationalMatrix& a, const RationalMatrix& b);
std::size_t hash_matrix(const RationalMatrix& m);

struct MatrixHash {
  std::size_t operator()(const NilpotentMatrix& m) const { return hash_matrix(m.matrix()); }
  std::size_t operator()(const UnipotentMatrix& m) const { return hash_matrix(m.matrix()); }
};
struct MatrixLess {
  bool operator()(const NilpotentMatrix& a, const NilpotentMatrix& b) const {
    return canonical_less(a.matrix(), b.matrix());
  }
  bool operator()(const UnipotentMatrix& a, const UnipotentMatrix& b) const {
    return canonical_less(a.matrix(), b.matrix());
  }
};

UnipotentMatrix mat_exp(const NilpotentMatrix& n);
NilpotentMatrix mat_log(const UnipotentMatrix& m);

NilpotentMatrix lie_bracket(const NilpotentMatrix& a, const NilpotentMatrix& b);  // AB - BA

UnipotentMatrix mul(const UnipotentMatrix& a, const UnipotentMatrix& b);
UnipotentMatrix inverse(const UnipotentMatrix& m);
UnipotentMatrix power(const UnipotentMatrix& m, std::int64_t k);
UnipotentMatrix commutator(const UnipotentMatrix& a, const UnipotentMatrix& b);

enum class DimensionCheck {
  kQuotient,  // accept d - 1 < step; brackets of degree >= d vanish
  kStrict,    // require d - 1 >= step
};

// Homomorphism from the free nilpotent Lie algebra: generator i maps to
// assignment[i] and brackets map to matrix commutators.
NilpotentMatrix substitute(const LieElement& x, const std::vector<NilpotentMatrix>& assignment,
                           DimensionCheck check = DimensionCheck::kQuotient);

// Strictly upper-triangular entries drawn from {-2,...,2} scaled by 1 or 1/2.
NilpotentMatrix random_nilpotent(std::size_t dim, std::mt19937_64& rng);

}  // namespace nilgrp
