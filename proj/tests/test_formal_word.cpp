#include <gtest/gtest.h>

#include <random>

#include "nilgrp/formal_word.hpp"
#include "nilgrp/matrix.hpp"
#include "word_gen.hpp"

using namespace nilgrp;

TEST(Word, ParseSumWord) {
  const FormalWord w = parse_word("a^2 b^2 c(b,a)^2");
  ASSERT_EQ(w.factors.size(), 3u);
  EXPECT_EQ(w.factors[0], Factor::letter("a", 2));
  EXPECT_EQ(w.factors[2].kind, Factor::Kind::kCommutator);
  EXPECT_EQ(w.factors[2].exponent, 2);
  EXPECT_EQ(word_length(w), 12);
  EXPECT_EQ(serialize_word(w), "a^2 b^2 c(b,a)^2");
}

TEST(Word, Grammar) {
  EXPECT_TRUE(parse_word("").empty());
  EXPECT_TRUE(parse_word("   ").empty());
  EXPECT_EQ(serialize_word(parse_word("(a b)^-3")), "(a b)^-3");
  EXPECT_EQ(serialize_word(parse_word("c(a b^2, c(a,b))")), "c(a b^2,c(a,b))");
  EXPECT_EQ(serialize_word(parse_word("x1^1")), "x1");
  EXPECT_EQ(word_length(parse_word("(a b)^-3")), 6);
  EXPECT_EQ(word_length(parse_word("c(a,c(a,b))")), 2 * (1 + 4));
}

TEST(Word, SyntaxErrorsCarryPositions) {
  for (const char* bad : {"a^", "a^0", "a^01", "c(a)", "c(a,b", "(a", "A", "a)", "a^-", "b ^2", "c(,a)"}) {
    EXPECT_THROW(parse_word(bad), ParseError) << bad;
  }
  try {
    parse_word("a b ^2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  const std::vector<std::string> alphabet{"a", "b"};
  EXPECT_THROW(parse_word("a z", alphabet), ParseError);
  EXPECT_NO_THROW(parse_word("a b", alphabet));
}

TEST(Word, RoundTripProperty) {
  std::mt19937_64 rng(1000);
  for (int i = 0; i < 1000; ++i) {
    const FormalWord w = testgen::random_word(rng);
    const std::string text = serialize_word(w);
    EXPECT_EQ(parse_word(text), w) << text;
    EXPECT_EQ(serialize_word(parse_word(text)), text);
    const std::string noisy = testgen::noisy_text(text);
    EXPECT_EQ(serialize_word(parse_word(noisy)), text) << noisy;
  }
}

TEST(Word, SubstituteAndMerge) {
  const FormalWord w = parse_word("a b c(a,b)");
  EXPECT_EQ(serialize_word(substitute_powers(w, 3)), "a^3 b^3 c(a^3,b^3)");
  EXPECT_EQ(serialize_word(merge_adjacent(parse_word("a a^2 b a^-3 a^3 (a a^-1)"))), "a^3 b");
  const auto counts = letter_counts(parse_word("a^2 b^2 c(b,a)^2"));
  EXPECT_EQ(counts.at("a"), 6);
  EXPECT_EQ(counts.at("b"), 6);
}

TEST(Word, EvaluationIsHomomorphic) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const std::map<std::string, UnipotentMatrix> env{{"a", mat_exp(random_nilpotent(4, rng))},
                                                     {"b", mat_exp(random_nilpotent(4, rng))},
                                                     {"c1", mat_exp(random_nilpotent(4, rng))}};
    const FormalWord u = testgen::random_word(rng, 2);
    const FormalWord v = testgen::random_word(rng, 2);
    FormalWord uv = u;
    uv.factors.insert(uv.factors.end(), v.factors.begin(), v.factors.end());
    const auto id = UnipotentMatrix::identity(4);
    EXPECT_EQ(evaluate_word(uv, env, id), mul(evaluate_word(u, env, id), evaluate_word(v, env, id)));
    EXPECT_EQ(evaluate_word(merge_adjacent(uv), env, id), evaluate_word(uv, env, id));
    FormalWord inv;
    inv.factors.push_back(Factor::group(u, -1));
    EXPECT_TRUE(mul(evaluate_word(inv, env, id), evaluate_word(u, env, id)).is_identity());
  }
}

TEST(Word, UnboundSymbol) {
  const auto id = UnipotentMatrix::identity(3);
  EXPECT_THROW(evaluate_word(parse_word("q"), std::map<std::string, UnipotentMatrix>{}, id), InvalidArgument);
}
