#include <gtest/gtest.h>

#include <random>

#include "nilgrp/bch.hpp"
#include "nilgrp/errors.hpp"
#include "nilgrp/json_io.hpp"

using namespace nilgrp;

TEST(JsonIo, LieElementRoundTrip) {
  auto algebra = LieAlgebra::get(3, 4);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const LieElement x = random_lie_element(algebra, rng);
    EXPECT_EQ(lie_from_json(to_json(x), algebra), x);
  }
  const auto a2 = LieAlgebra::get(2, 2);
  EXPECT_EQ(to_json(bch(a2->generator(0), a2->generator(1))).dump(),
            R"({"x1":"1/1","x2":"1/1","[x1,x2]":"1/2"})");
}

TEST(JsonIo, NonBasisBracketKeysAreRewritten) {
  auto algebra = LieAlgebra::get(2, 3);
  const auto g = algebra->generators();
  EXPECT_EQ(lie_from_json(Json{{"[x2,x1]", "1/1"}}, algebra), -bracket(g[0], g[1]));
  EXPECT_EQ(parse_bracket_expression("[x2,[x1,x2]]", algebra), bracket(g[1], bracket(g[0], g[1])));
  EXPECT_THROW(lie_from_json(Json{{"[x1,x3]", "1/1"}}, algebra), ParseError);
  EXPECT_THROW(lie_from_json(Json{{"x1", 1}}, algebra), InvalidArgument);
  EXPECT_THROW(lie_from_json(Json::array(), algebra), InvalidArgument);
}

TEST(JsonIo, MatrixRoundTrip) {
  RationalMatrix m = RationalMatrix::identity(3);
  m(0, 2) = Rational(-5, 3);
  const Json j = to_json(m);
  EXPECT_EQ(j["dim"], 3);
  EXPECT_EQ(j["rows"][0][2], "-5/3");
  EXPECT_EQ(matrix_from_json(j), m);
  EXPECT_THROW(matrix_from_json(Json{{"dim", 2}, {"rows", Json::array()}}), InvalidArgument);
}

TEST(JsonIo, Certificates) {
  const Json c = to_json(containment_certificate(1, 2));
  EXPECT_EQ(c.dump(), R"({"j":1,"step":2,"rationals":["1/1","-1/1"],"exponents":["3","1"],"m":"1","k":"1"})");
  const Json s = to_json(sum_word(2).certificate);
  EXPECT_EQ(s["min_residual_degree"], "exact");
  EXPECT_EQ(s["word"], "a^2 b^2 c(b,a)^2");
}

TEST(JsonIo, PatternTable) {
  PatternCoeffs t{{BracketPattern{{1, 2}}, Rational(-1, 2)}};
  EXPECT_EQ(to_json(t).dump(), R"([{"pattern":[1,2],"coefficient":"-1/2"}])");
}
