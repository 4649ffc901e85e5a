#include <gtest/gtest.h>

#include <random>

#include "nilgrp/bch.hpp"
#include "nilgrp/errors.hpp"
#include "nilgrp/group.hpp"
#include "nilgrp/matrix.hpp"
#include "oracles.hpp"

using namespace nilgrp;

namespace {

LieElement term(const std::shared_ptr<const LieAlgebra>& algebra, const char* text, Rational c) {
  auto i = algebra->find(text);
  EXPECT_TRUE(i.has_value()) << text;
  return LieElement(algebra, {{*i, c}});
}

}  // namespace

TEST(Bch, KnownLowDegreeTerms) {
  auto a2 = LieAlgebra::get(2, 2);
  EXPECT_EQ(bch(a2->generator(0), a2->generator(1)),
            a2->generator(0) + a2->generator(1) + term(a2, "[x1,x2]", Rational(1, 2)));

  auto a3 = LieAlgebra::get(2, 3);
  const LieElement z = bch(a3->generator(0), a3->generator(1));
  EXPECT_EQ(z.degree_component(3),
            term(a3, "[x1,[x1,x2]]", Rational(1, 12)) + term(a3, "[[x1,x2],x2]", Rational(1, 12)));

  // Degree four carries the single coefficient -1/24 [x2,[x1,[x1,x2]]].
  auto a4 = LieAlgebra::get(2, 4);
  const auto g = a4->generators();
  EXPECT_EQ(bch(g[0], g[1]).degree_component(4),
            bracket(g[1], bracket(g[0], bracket(g[0], g[1]))) * Rational(-1, 24));
}

TEST(Bch, StepOneIsAbelian) {
  auto a1 = LieAlgebra::get(3, 1);
  EXPECT_EQ(multi_bch(a1->generators()), a1->generator(0) + a1->generator(1) + a1->generator(2));
}

TEST(Bch, GroupLaws) {
  auto algebra = LieAlgebra::get(3, 4);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 10; ++t) {
    const LieElement x = random_lie_element(algebra, rng);
    const LieElement y = random_lie_element(algebra, rng);
    const LieElement z = random_lie_element(algebra, rng);
    EXPECT_EQ(bch(bch(x, y), z), bch(x, bch(y, z)));
    EXPECT_TRUE(bch(x, -x).is_zero());
    EXPECT_EQ(bch(x, y).degree_component(1), (x + y).degree_component(1));
    EXPECT_EQ(bch(x, algebra->zero()), x);
  }
  EXPECT_THROW(multi_bch({}), InvalidArgument);
}

TEST(Bch, MatrixOracle) {
  std::mt19937_64 rng(17);
  for (int n = 2; n <= 5; ++n) {
    auto algebra = LieAlgebra::get(2, n);
    const LieElement z = bch(algebra->generator(0), algebra->generator(1));
    for (int t = 0; t < 10; ++t) {
      const NilpotentMatrix a = random_nilpotent(static_cast<std::size_t>(n) + 1, rng);
      const NilpotentMatrix b = random_nilpotent(static_cast<std::size_t>(n) + 1, rng);
      const auto expected = oracle::series_log(oracle::series_exp(a.matrix()) * oracle::series_exp(b.matrix()));
      EXPECT_EQ(substitute(z, {a, b}).matrix(), expected) << "n=" << n;
    }
  }
}

TEST(Bch, ConjugationLog) {
  auto algebra = LieAlgebra::get(2, 5);
  std::mt19937_64 rng(4);
  const LieElement a = random_lie_element(algebra, rng);
  const LieElement b = random_lie_element(algebra, rng);
  EXPECT_EQ(conjugation_log(a, b), multi_bch({a, b, -a}));
}

TEST(BchTailTable, StepTwoAndRoundTrip) {
  const BchTailTable t2 = bch_tail_table(*LieAlgebra::get(2, 2));
  ASSERT_EQ(t2.entries.size(), 1u);
  EXPECT_EQ(t2.entries.begin()->first, (BracketPattern{{1, 2}}));
  EXPECT_EQ(t2.entries.begin()->second, Rational(-1, 2));
  for (int n = 1; n <= 6; ++n) {
    auto algebra = LieAlgebra::get(2, n);
    const BchTailTable t = bch_tail_table(*algebra);
    const auto g = algebra->generators();
    EXPECT_EQ(g[0] + g[1] - evaluate_pattern_combination(*algebra, t.entries), bch(g[0], g[1])) << "n=" << n;
  }
  EXPECT_THROW(bch_tail_table(*LieAlgebra::get(3, 2)), InvalidArgument);
}

TEST(Group, Laws) {
  auto algebra = LieAlgebra::get(2, 4);
  std::mt19937_64 rng(8);
  const GroupElement x(random_lie_element(algebra, rng));
  const GroupElement y(random_lie_element(algebra, rng));
  EXPECT_TRUE(mul(x, inverse(x)).is_identity());
  EXPECT_EQ(power(x, 3), mul(x, mul(x, x)));
  EXPECT_EQ(power(x, -2), inverse(mul(x, x)));
  EXPECT_EQ(rational_power(rational_power(x, Rational(1, 2)), Rational(2)), x);
  EXPECT_EQ(commutator(x, y), mul(mul(x, y), mul(inverse(x), inverse(y))));
  EXPECT_TRUE(power(x, 0).is_identity());
}

TEST(Group, NestedCommutator) {
  auto algebra = LieAlgebra::get(2, 3);
  const GroupElement a = GroupElement::generator(*algebra, 0);
  const GroupElement b = GroupElement::generator(*algebra, 1);
  EXPECT_EQ(nested_commutator(BracketPattern{{1, 2}}, {a, b}), commutator(a, b));
  EXPECT_EQ(nested_commutator(BracketPattern{{1, 1, 2}}, {a, b}), commutator(a, commutator(a, b)));
  EXPECT_THROW(nested_commutator(BracketPattern{{1}}, {a, b}), InvalidArgument);
}

TEST(Group, CommutatorLogTail) {
  for (int L = 1; L <= 3; ++L)
    for (int n = 2; n <= 4; ++n) {
      auto algebra = LieAlgebra::get(L, n);
      std::vector<GroupElement> gens;
      for (int i = 0; i < L; ++i) gens.push_back(GroupElement::generator(*algebra, i));
      for (int j = 2; j <= n; ++j)
        for (const auto& alpha : all_patterns(j, L)) {
          const LieElement diff = nested_commutator(alpha, gens).log() - eval_bracket_pattern(alpha, algebra->generators());
          const auto low = diff.min_degree();
          EXPECT_TRUE(!low || *low > j) << alpha.to_string();
        }
    }
}
