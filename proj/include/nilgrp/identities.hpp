#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nilgrp/errors.hpp"
#include "nilgrp/formal_word.hpp"
#include "nilgrp/free_lie_algebra.hpp"
#include "nilgrp/group.hpp"
#include "nilgrp/linear_algebra.hpp"

namespace nilgrp {

// Synthesis paths refuse contexts beyond these bounds; |Omega_j^L| = L^j
// patterns per degree makes larger ones impractical.
struct SynthesisLimits {
  int max_step = 6;
  int max_generators = 4;
};
void check_synthesis_limits(const LieAlgebra& algebra, const SynthesisLimits& limits = {});

// Proof that log(word) + residual = target in the free nilpotent group.
struct SynthesisCertificate {
  LieElement target;
  FormalWord word;
  LieElement residual;
  std::optional<int> min_residual_degree;  // nullopt: residual is zero

  bool exact() const { return !min_residual_degree.has_value(); }
};

SynthesisCertificate make_certificate(const LieAlgebra& algebra, const LieElement& target, FormalWord word);
// Re-evaluates the word and checks every field.
bool validate_certificate(const SynthesisCertificate& cert);

// Pattern tables indexed by degree; entries below the first meaningful degree
// are empty.
using DegreeTables = std::vector<PatternCoeffs>;

// c_alpha with log(x_1 ... x_L) = sum X_i + sum_j sum_alpha c_alpha h_alpha.
DegreeTables iterated_expansion(const LieAlgebra& algebra);

// s_beta with log(H_alpha) = h_alpha + sum_{l > |alpha|} sum_beta s_beta h_beta.
DegreeTables commutator_log_tail(const BracketPattern& alpha, const LieAlgebra& algebra);

// How a correction H_alpha^m is written.
enum class CorrectionShape {
  kOuterExponent,  // H_alpha^m; negative m written as c(inner, x)^|m|
  kInnerExponent,  // c(x_{alpha(1)}^m, c(x_{alpha(2)}, ...))
};

FormalWord correction_word(const BracketPattern& alpha, std::int64_t exponent,
                           const std::vector<std::string>& symbols,
                           CorrectionShape shape = CorrectionShape::kOuterExponent);

struct LogProductDecomposition {
  int level = 1;                            // J
  std::vector<Rational> beta;               // beta_2..beta_J
  std::vector<FormalWord> correction_words;  // M~_2..M~_J
  LieElement tail;                          // degrees J+1..n only
};

// sum X_i = log(x_1...x_L) + sum_{i=2}^J beta_i log(M~_i) + tail.
LogProductDecomposition log_product_decomposition(int level, const LieAlgebra& algebra,
                                                  CorrectionShape shape = CorrectionShape::kOuterExponent);

class DivisibilityViolation : public InvalidArgument {
 public:
  DivisibilityViolation(std::int64_t t, std::vector<std::int64_t> divisors);
  const std::vector<std::int64_t>& divisors() const { return divisors_; }

 private:
  std::vector<std::int64_t> divisors_;
};

struct PowerWordSynthesis {
  std::vector<std::int64_t> divisors;  // c_1 | c_2 | ... | c_j
  FormalWord word;
  SynthesisCertificate certificate;
};

// Divisors c_1..c_j for level j (depending only on L and j).
std::vector<std::int64_t> power_word_divisors(int level, const LieAlgebra& algebra,
                                              CorrectionShape shape = CorrectionShape::kOuterExponent);

// Word prod x_i^T * (commutator corrections of arity 2..j) whose log equals
// T sum X_i up to terms of degree > j. Throws DivisibilityViolation when T is
// not divisible by every c_i.
PowerWordSynthesis power_word_synthesis(std::int64_t t, int level, const LieAlgebra& algebra,
                                        CorrectionShape shape = CorrectionShape::kOuterExponent);

struct SumWord {
  std::int64_t m = 1;
  FormalWord word;
  std::int64_t length = 0;
  SynthesisCertificate certificate;
};

// m (log a + log b) = log w(a, b) exactly, for a two-generator algebra.
SumWord sum_word(const LieAlgebra& algebra, CorrectionShape shape = CorrectionShape::kOuterExponent);
// Two-generator algebra with symbols a, b at the given step.
SumWord sum_word(int step);

struct ScaleProbe {
  std::int64_t scale = 0;
  bool exact_word_found = false;
};
// For each proper divisor m' of sum_word's m (steps <= 3 only), whether the
// greedy integral construction starting from a^m' b^m' closes up exactly.
std::vector<ScaleProbe> probe_smaller_scales(int step);

struct VandermondeRecipe {
  int step = 2;
  std::int64_t scale = 1;  // m
  std::vector<std::int64_t> sample_points;  // 1..n-1
  RationalMatrix matrix;   // [s^j]
  RationalMatrix inverse;
};

VandermondeRecipe vandermonde_recipe(int step, std::int64_t scale);

// [log a, log b] recovered from conjugates a^s b^m a^-s, s = 1..n-1.
LieElement extract_bracket(const GroupElement& a, const GroupElement& b, const VandermondeRecipe& recipe);

// B_j is contained in sum_i q_i log(A^{k_i}) for every symmetric A in a
// step-n group. scale and power witness e^{scale b} in A^{power} for b in
// B_{j-1}.
struct ContainmentCertificate {
  int level = 0;  // j
  int step = 1;   // n
  std::vector<Rational> rationals;
  std::vector<Integer> exponents;  // exceed 64 bits from j = 3 at step 4
  Integer scale = 1;  // m
  Integer power = 1;  // k
};

ContainmentCertificate containment_certificate(int level, int step);

}  // namespace nilgrp
