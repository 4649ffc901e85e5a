#include <gtest/gtest.h>

#include <random>

#include "nilgrp/bch.hpp"
#include "nilgrp/errors.hpp"
#include "nilgrp/matrix.hpp"
#include "oracles.hpp"

using namespace nilgrp;

TEST(Matrix, ShapeValidation) {
  RationalMatrix m = RationalMatrix::identity(3);
  EXPECT_THROW(NilpotentMatrix{m}, InvalidArgument);
  EXPECT_NO_THROW(UnipotentMatrix{m});
  m(2, 0) = 1;
  EXPECT_THROW(UnipotentMatrix{m}, InvalidArgument);
  EXPECT_THROW(NilpotentMatrix(RationalMatrix(2, 3)), InvalidArgument);
}

TEST(Matrix, ExpLogAgainstSeriesOracle) {
  std::mt19937_64 rng(31);
  for (std::size_t d = 2; d <= 6; ++d)
    for (int t = 0; t < 10; ++t) {
      const NilpotentMatrix n = random_nilpotent(d, rng);
      const UnipotentMatrix u = mat_exp(n);
      EXPECT_EQ(u.matrix(), oracle::series_exp(n.matrix()));
      EXPECT_EQ(mat_log(u), n);
      EXPECT_EQ(oracle::series_log(u.matrix()), n.matrix());
    }
}

TEST(Matrix, GroupOperations) {
  std::mt19937_64 rng(32);
  const UnipotentMatrix a = mat_exp(random_nilpotent(5, rng));
  const UnipotentMatrix b = mat_exp(random_nilpotent(5, rng));
  EXPECT_TRUE(mul(a, inverse(a)).is_identity());
  EXPECT_EQ(power(a, 5), mul(power(a, 2), power(a, 3)));
  EXPECT_EQ(power(a, -3), inverse(power(a, 3)));
  EXPECT_EQ(mat_log(power(a, 7)), mat_log(a) * Rational(7));
  EXPECT_EQ(commutator(a, b), mul(mul(a, b), mul(inverse(a), inverse(b))));
  RationalMatrix half = RationalMatrix::identity(3);
  half(0, 1) = Rational(1, 2);
  EXPECT_FALSE(UnipotentMatrix(half).has_integer_entries());
  EXPECT_TRUE(power(UnipotentMatrix(half), 2).has_integer_entries());
}

TEST(Matrix, CanonicalOrderAndHash) {
  RationalMatrix x = RationalMatrix::identity(3);
  RationalMatrix y = x;
  y(0, 2) = Rational(1, 2);
  EXPECT_TRUE(canonical_less(x, y));
  EXPECT_FALSE(canonical_less(y, x));
  RationalMatrix z = x;
  z(0, 2) = Rational(2, 4);
  EXPECT_EQ(hash_matrix(y), hash_matrix(z));
}

TEST(Substitute, Homomorphism) {
  auto algebra = LieAlgebra::get(3, 4);
  std::mt19937_64 rng(33);
  for (int t = 0; t < 10; ++t) {
    std::vector<NilpotentMatrix> assignment;
    for (int i = 0; i < 3; ++i) assignment.push_back(random_nilpotent(5, rng));
    const LieElement x = random_lie_element(algebra, rng);
    const LieElement y = random_lie_element(algebra, rng);
    EXPECT_EQ(substitute(bracket(x, y), assignment), lie_bracket(substitute(x, assignment), substitute(y, assignment)));
    EXPECT_EQ(substitute(x + y, assignment), substitute(x, assignment) + substitute(y, assignment));
  }
}

TEST(Substitute, DimensionChecks) {
  auto algebra = LieAlgebra::get(2, 4);
  std::mt19937_64 rng(34);
  const std::vector<NilpotentMatrix> small{random_nilpotent(3, rng), random_nilpotent(3, rng)};
  const LieElement z = bch(algebra->generator(0), algebra->generator(1));
  EXPECT_NO_THROW(substitute(z, small, DimensionCheck::kQuotient));
  EXPECT_THROW(substitute(z, small, DimensionCheck::kStrict), InvalidArgument);
  EXPECT_THROW(substitute(z, {small[0]}), ContextMismatch);
  // In UT(3) the quotient map agrees with the matrix BCH.
  EXPECT_EQ(substitute(z, small), mat_log(mul(mat_exp(small[0]), mat_exp(small[1]))));
}
