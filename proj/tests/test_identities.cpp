#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "nilgrp/bch.hpp"
#include "nilgrp/identities.hpp"
#include "nilgrp/matrix.hpp"

using namespace nilgrp;

namespace {

LieElement sum_of_generators(const LieAlgebra& algebra) {
  LieElement s = algebra.zero();
  for (const auto& g : algebra.generators()) s += g;
  return s;
}

LieElement table_value(const LieAlgebra& algebra, const DegreeTables& tables) {
  LieElement v = algebra.zero();
  for (const auto& t : tables) v += evaluate_pattern_combination(algebra, t);
  return v;
}

std::int64_t lcm_of(const std::vector<std::int64_t>& xs) {
  return std::accumulate(xs.begin(), xs.end(), std::int64_t{1}, [](auto a, auto b) { return std::lcm(a, b); });
}

}  // namespace

TEST(IteratedExpansion, TwoGeneratorsStepTwo) {
  const DegreeTables t = iterated_expansion(*LieAlgebra::get(2, 2));
  ASSERT_GE(t.size(), 3u);
  ASSERT_EQ(t[2].size(), 1u);
  EXPECT_EQ(t[2].begin()->first, (BracketPattern{{1, 2}}));
  EXPECT_EQ(t[2].begin()->second, Rational(1, 2));
}

TEST(IteratedExpansion, ReproducesLogOfProduct) {
  for (int L = 1; L <= 3; ++L)
    for (int n = 1; n <= 5; ++n) {
      auto algebra = LieAlgebra::get(L, n);
      EXPECT_EQ(sum_of_generators(*algebra) + table_value(*algebra, iterated_expansion(*algebra)),
                multi_bch(algebra->generators()))
          << "L=" << L << " n=" << n;
    }
}

TEST(CommutatorLogTail, ReproducesLogOfCommutator) {
  for (int L = 2; L <= 3; ++L)
    for (int n = 2; n <= 4; ++n) {
      auto algebra = LieAlgebra::get(L, n);
      std::vector<GroupElement> gens;
      for (int i = 0; i < L; ++i) gens.push_back(GroupElement::generator(*algebra, i));
      for (int j = 2; j <= n; ++j)
        for (const auto& alpha : all_patterns(j, L)) {
          const DegreeTables tail = commutator_log_tail(alpha, *algebra);
          for (std::size_t d = 0; d < tail.size(); ++d)
            if (!tail[d].empty()) EXPECT_GT(static_cast<int>(d), j);
          EXPECT_EQ(eval_bracket_pattern(alpha, algebra->generators()) + table_value(*algebra, tail),
                    nested_commutator(alpha, gens).log());
        }
    }
  EXPECT_THROW(commutator_log_tail(BracketPattern{{1}}, *LieAlgebra::get(2, 3)), InvalidArgument);
  EXPECT_THROW(commutator_log_tail(BracketPattern{{1, 2, 1, 2}}, *LieAlgebra::get(2, 3)), InvalidArgument);
}

TEST(CorrectionWord, Shapes) {
  const std::vector<std::string> s{"a", "b"};
  EXPECT_EQ(serialize_word(correction_word(BracketPattern{{1, 2}}, 3, s)), "c(a,b)^3");
  EXPECT_EQ(serialize_word(correction_word(BracketPattern{{1, 2}}, -3, s)), "c(b,a)^3");
  EXPECT_EQ(serialize_word(correction_word(BracketPattern{{1, 1, 2}}, -2, s)), "c(c(a,b),a)^2");
  EXPECT_EQ(serialize_word(correction_word(BracketPattern{{2, 1, 2}}, 5, s, CorrectionShape::kInnerExponent)),
            "c(b^5,c(a,b))");
}

TEST(LogProductDecomposition, Identity) {
  for (int L = 1; L <= 3; ++L)
    for (int n = 2; n <= 4; ++n)
      for (int level = 1; level <= n; ++level) {
        auto algebra = LieAlgebra::get(L, n);
        const auto dec = log_product_decomposition(level, *algebra);
        LieElement rhs = multi_bch(algebra->generators()) + dec.tail;
        for (std::size_t i = 0; i < dec.beta.size(); ++i)
          rhs += evaluate_on_generators(dec.correction_words[i], *algebra).log() * dec.beta[i];
        EXPECT_EQ(rhs, sum_of_generators(*algebra)) << "L=" << L << " n=" << n << " J=" << level;
        const auto low = dec.tail.min_degree();
        EXPECT_TRUE(!low || *low > level);
      }
}

TEST(PowerWord, DivisorsFormAChain) {
  for (int n = 1; n <= 4; ++n)
    for (int level = 1; level <= n; ++level) {
      const auto c = power_word_divisors(level, *LieAlgebra::get(2, n));
      ASSERT_EQ(static_cast<int>(c.size()), level);
      EXPECT_EQ(c[0], 1);
      for (std::size_t i = 1; i < c.size(); ++i) EXPECT_EQ(c[i] % c[i - 1], 0);
    }
}

TEST(PowerWord, SucceedsAtLcmWithHighResidual) {
  for (int n = 1; n <= 4; ++n)
    for (int level = 1; level <= n; ++level) {
      auto algebra = LieAlgebra::get(2, n);
      const std::int64_t t = lcm_of(power_word_divisors(level, *algebra));
      for (std::int64_t mult : {1, 2}) {
        const PowerWordSynthesis pw = power_word_synthesis(t * mult, level, *algebra);
        EXPECT_TRUE(validate_certificate(pw.certificate));
        EXPECT_EQ(pw.certificate.target, sum_of_generators(*algebra) * Rational(t * mult));
        const auto low = pw.certificate.min_residual_degree;
        EXPECT_TRUE(!low || *low > level) << "n=" << n << " j=" << level;
      }
    }
}

TEST(PowerWord, RejectsNonDivisibleT) {
  auto algebra = LieAlgebra::get(2, 3);
  try {
    power_word_synthesis(4, 3, *algebra);
    FAIL() << "expected a divisibility violation";
  } catch (const DivisibilityViolation& e) {
    EXPECT_EQ(e.divisors(), (std::vector<std::int64_t>{1, 2, 6}));
    EXPECT_NE(std::string(e.what()).find("divisibility violation"), std::string::npos);
  }
}

TEST(PowerWord, DegenerateInputs) {
  auto algebra = LieAlgebra::get(2, 3);
  const PowerWordSynthesis zero = power_word_synthesis(0, 3, *algebra);
  EXPECT_TRUE(zero.word.empty());
  EXPECT_TRUE(zero.certificate.target.is_zero());
  auto one = LieAlgebra::get(1, 4);
  const PowerWordSynthesis single = power_word_synthesis(5, 4, *one);
  EXPECT_EQ(serialize_word(single.word), "x1^5");
  EXPECT_TRUE(single.certificate.exact());
  EXPECT_THROW(power_word_synthesis(1, 0, *algebra), InvalidArgument);
}

TEST(PowerWord, InnerShapeAlsoCertifies) {
  auto algebra = LieAlgebra::get(2, 4);
  const std::int64_t t = lcm_of(power_word_divisors(4, *algebra, CorrectionShape::kInnerExponent));
  const auto pw = power_word_synthesis(t, 4, *algebra, CorrectionShape::kInnerExponent);
  EXPECT_TRUE(validate_certificate(pw.certificate));
  EXPECT_TRUE(pw.certificate.exact());
}

TEST(SumWord, KnownSmallCases) {
  const SumWord s1 = sum_word(1);
  EXPECT_EQ(s1.m, 1);
  EXPECT_EQ(serialize_word(s1.word), "a b");
  EXPECT_EQ(s1.length, 2);
  const SumWord s2 = sum_word(2);
  EXPECT_EQ(s2.m, 2);
  EXPECT_EQ(serialize_word(s2.word), "a^2 b^2 c(b,a)^2");
  EXPECT_EQ(s2.length, 12);
}

TEST(SumWord, ExactAndNumericallyVerified) {
  std::mt19937_64 rng(71);
  for (int n = 1; n <= 4; ++n) {
    const SumWord sw = sum_word(n);
    EXPECT_TRUE(sw.certificate.exact());
    EXPECT_TRUE(validate_certificate(sw.certificate));
    EXPECT_EQ(sw.length, word_length(sw.word));
    const std::size_t d = static_cast<std::size_t>(n) + 1;
    for (int t = 0; t < 10; ++t) {
      const NilpotentMatrix u = random_nilpotent(d, rng);
      const NilpotentMatrix v = random_nilpotent(d, rng);
      const std::map<std::string, UnipotentMatrix> env{{"a", mat_exp(u)}, {"b", mat_exp(v)}};
      EXPECT_EQ(mat_log(evaluate_word(sw.word, env, UnipotentMatrix::identity(d))), (u + v) * Rational(sw.m));
    }
  }
}

TEST(SumWord, ScaleProbesAreProperDivisors) {
  for (int n = 1; n <= 3; ++n) {
    const std::int64_t m = sum_word(n).m;
    for (const auto& p : probe_smaller_scales(n)) {
      EXPECT_LT(p.scale, m);
      EXPECT_EQ(m % p.scale, 0);
    }
  }
  EXPECT_TRUE(probe_smaller_scales(4).empty());
}

TEST(Certificate, DetectsTampering) {
  auto algebra = LieAlgebra::get(2, 3);
  SynthesisCertificate cert =
      make_certificate(*algebra, sum_of_generators(*algebra), parse_word("x1 x2"));
  EXPECT_TRUE(validate_certificate(cert));
  EXPECT_EQ(cert.min_residual_degree, 2);
  cert.residual = algebra->zero();
  EXPECT_FALSE(validate_certificate(cert));
}

TEST(Vandermonde, StepThreeInverse) {
  const VandermondeRecipe r = vandermonde_recipe(3, 1);
  RationalMatrix expected(2, 2);
  expected(0, 0) = 2;
  expected(0, 1) = Rational(-1, 2);
  expected(1, 0) = -1;
  expected(1, 1) = Rational(1, 2);
  EXPECT_EQ(r.inverse, expected);
  for (int n = 2; n <= 6; ++n) {
    const VandermondeRecipe v = vandermonde_recipe(n, 2);
    EXPECT_EQ(v.matrix * v.inverse, RationalMatrix::identity(static_cast<std::size_t>(n) - 1));
  }
  EXPECT_THROW(vandermonde_recipe(1, 1), InvalidArgument);
}

TEST(Vandermonde, ExtractBracket) {
  std::mt19937_64 rng(72);
  for (int n = 2; n <= 5; ++n) {
    auto algebra = LieAlgebra::get(2, n);
    for (std::int64_t m : {1, 2}) {
      const VandermondeRecipe recipe = vandermonde_recipe(n, m);
      for (int t = 0; t < 5; ++t) {
        const LieElement x = random_lie_element(algebra, rng);
        const LieElement y = random_lie_element(algebra, rng);
        EXPECT_EQ(extract_bracket(GroupElement(x), GroupElement(y), recipe), bracket(x, y));
      }
    }
  }
  EXPECT_THROW(extract_bracket(GroupElement::generator(*LieAlgebra::get(2, 3), 0),
                               GroupElement::generator(*LieAlgebra::get(2, 3), 1), vandermonde_recipe(4, 1)),
               ContextMismatch);
}

TEST(ContainmentCertificate, SmallCases) {
  const ContainmentCertificate c0 = containment_certificate(0, 2);
  EXPECT_EQ(c0.rationals, (std::vector<Rational>{1}));
  const ContainmentCertificate c1 = containment_certificate(1, 2);
  EXPECT_EQ(c1.rationals, (std::vector<Rational>{1, -1}));
  EXPECT_EQ(c1.exponents, (std::vector<Integer>{3, 1}));
  EXPECT_EQ(c1.scale, 1);
  EXPECT_EQ(c1.power, 1);
  const ContainmentCertificate c2 = containment_certificate(2, 2);
  EXPECT_TRUE(c2.rationals.empty());
  EXPECT_TRUE(c2.exponents.empty());
}

TEST(ContainmentCertificate, RecipeHoldsInTheFreeGroup) {
  // [u, v] = sum_s q_s log(e^{s u} e^{M v} e^{-s u}) - sigma/M (M v) with M v the folded element.
  for (int n = 2; n <= 4; ++n) {
    const ContainmentCertificate c = containment_certificate(1, n);
    const std::size_t terms = c.rationals.size();
    ASSERT_EQ(c.exponents.size(), terms);
    Rational total = 0;
    for (const auto& q : c.rationals) total += q;
    EXPECT_TRUE(total.is_zero()) << "n=" << n;
    auto algebra = LieAlgebra::get(2, n);
    const GroupElement a = GroupElement::generator(*algebra, 0);
    const GroupElement b = GroupElement::generator(*algebra, 1);
    LieElement sum = algebra->zero();
    for (std::size_t s = 0; s + 1 < terms; ++s) {
      const std::int64_t shift = static_cast<std::int64_t>(s) + 1;
      sum += mul(mul(power(a, shift), b), power(a, -shift)).log() * c.rationals[s];
    }
    sum += b.log() * c.rationals.back();
    EXPECT_EQ(sum, bracket(a.log(), b.log()));
  }
}

TEST(Limits, RefuseOversizedContexts) {
  EXPECT_THROW(check_synthesis_limits(*LieAlgebra::get(2, 7)), InvalidArgument);
  EXPECT_THROW(check_synthesis_limits(*LieAlgebra::get(5, 2)), InvalidArgument);
  EXPECT_NO_THROW(check_synthesis_limits(*LieAlgebra::get(4, 6)));
}
