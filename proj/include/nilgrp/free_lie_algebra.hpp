#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nilgrp/assoc_poly.hpp"
#include "nilgrp/rational.hpp"

namespace nilgrp {

// Free nilpotent Lie algebra on L generators, truncated at step n.
struct AlgebraContext {
  int num_generators = 0;
  int step = 0;
  std::vector<std::string> generator_symbols;

  // Symbols x1..xL.
  static AlgebraContext with_default_symbols(int num_generators, int step);

  // Throws InvalidArgument on L < 1, n < 1, duplicate or malformed symbols.
  void validate() const;

  friend bool operator==(const AlgebraContext&, const AlgebraContext&) = default;
};

bool is_valid_symbol(std::string_view s);

// Element of the Lyndon-word Hall set. Leaves carry a generator index; inner
// nodes are the standard factorization (left, right) given as basis indices.
struct HallWord {
  std::vector<int> letters;  // 0-based generator indices
  int left = -1;
  int right = -1;
  WordCode code = 0;
  std::string text;             // canonical bracket string, e.g. "[x1,[x1,x2]]"
  std::vector<int> multidegree;  // occurrences of each generator

  int degree() const { return static_cast<int>(letters.size()); }
  bool is_leaf() const { return left < 0; }
};

// A map alpha: {1..j} -> {1..L}. Indices are 1-based. Ordered arity-major,
// then lexicographically.
struct BracketPattern {
  std::vector<int> indices;

  int arity() const { return static_cast<int>(indices.size()); }
  std::string to_string() const;  // "(1,2,2)"

  friend bool operator==(const BracketPattern&, const BracketPattern&) = default;
  friend std::strong_ordering operator<=>(const BracketPattern& a, const BracketPattern& b) {
    if (a.indices.size() != b.indices.size()) return a.indices.size() <=> b.indices.size();
    return a.indices <=> b.indices;
  }
};

// All patterns of the given arity over {1..L}, lexicographic.
std::vector<BracketPattern> all_patterns(int arity, int num_generators);

using PatternCoeffs = std::map<BracketPattern, Rational>;

class LieElement;

class LieAlgebra : public std::enable_shared_from_this<LieAlgebra> {
 public:
  using Terms = std::map<int, Rational>;
  using Expansion = std::vector<std::pair<WordCode, Rational>>;

  // Instances are interned: equal contexts share one algebra.
  static std::shared_ptr<const LieAlgebra> get(const AlgebraContext& ctx);
  static std::shared_ptr<const LieAlgebra> get(int num_generators, int step);

  const AlgebraContext& context() const { return ctx_; }
  int num_generators() const { return ctx_.num_generators; }
  int step() const { return ctx_.step; }

  const std::vector<HallWord>& basis() const { return basis_; }
  // Half-open range of basis indices of the given degree.
  std::pair<int, int> degree_range(int degree) const;
  std::optional<int> find(std::string_view canonical_text) const;

  LieElement zero() const;
  LieElement generator(int index) const;  // 0-based
  std::vector<LieElement> generators() const;

  // [b_i, b_j] in the basis, truncated above the step.
  const Terms& bracket_basis(int i, int j) const;
  // h_alpha evaluated on the generators.
  const Terms& pattern_value(const BracketPattern& alpha) const;

  // Associative expansion of basis element i, sorted by word code.
  const Expansion& expansion(int basis_index) const { return expansions_[basis_index]; }
  AssocPoly to_assoc(const LieElement& x) const;
  // Inverse of to_assoc on Lie polynomials. Throws InvariantViolation when
  // the input is not a Lie polynomial.
  LieElement from_assoc(const AssocPoly& p) const;

  explicit LieAlgebra(AlgebraContext ctx);

 private:
  Terms from_assoc_component(int degree, AssocPoly::Component comp) const;

  AlgebraContext ctx_;
  std::vector<HallWord> basis_;
  std::vector<int> degree_offsets_;  // basis_ index where each degree starts
  std::vector<std::unordered_map<WordCode, int>> lyndon_index_;  // per degree
  std::vector<Expansion> expansions_;
  std::unordered_map<std::string, int> text_index_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::uint64_t, Terms> bracket_cache_;
  mutable std::map<BracketPattern, Terms> pattern_cache_;
};

// Sparse rational combination of Hall basis elements.
class LieElement {
 public:
  using Terms = LieAlgebra::Terms;

  LieElement(std::shared_ptr<const LieAlgebra> algebra, Terms terms = {});

  const LieAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const LieAlgebra>& algebra_ptr() const { return algebra_; }
  const Terms& terms() const { return terms_; }

  Rational coefficient(int basis_index) const;
  bool is_zero() const { return terms_.empty(); }

  LieElement degree_component(int degree) const;
  // Components with lo <= degree <= hi.
  LieElement degree_band(int lo, int hi) const;
  std::vector<int> support_degrees() const;
  std::optional<int> min_degree() const;

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Rational& s);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(LieElement a, const Rational& s) { return a *= s; }
  friend LieElement operator*(const Rational& s, LieElement a) { return a *= s; }
  friend LieElement operator-(LieElement a) { return a *= Rational(-1); }
  friend bool operator==(const LieElement& a, const LieElement& b);

  // "1/2*[x1,x2] + -1/12*[x2,[x1,x2]]"; "0" for zero.
  std::string to_string() const;

 private:
  void check_same(const LieElement& o) const;

  std::shared_ptr<const LieAlgebra> algebra_;
  Terms terms_;
};

std::vector<HallWord> hall_basis(const AlgebraContext& ctx);

LieElement bracket(const LieElement& x, const LieElement& y);
// ad(a)^j b.
LieElement ad_power(const LieElement& a, const LieElement& b, int j);
// h_alpha = ad(X_{alpha(1)}) ... ad(X_{alpha(j-1)}) X_{alpha(j)}.
LieElement eval_bracket_pattern(const BracketPattern& alpha, const std::vector<LieElement>& args);
// Coefficients c_alpha over right-normed brackets of the generators that
// reproduce the degree-j component of x. Canonical: patterns scanned
// lexicographically, free variables zero.
PatternCoeffs rightnormed_decomposition(const LieElement& x, int degree);
// Sum of c_alpha * h_alpha(generators).
LieElement evaluate_pattern_combination(const LieAlgebra& algebra, const PatternCoeffs& coeffs);

// Every basis coefficient drawn from {-2,...,2} scaled by 1 or 1/2.
LieElement random_lie_element(const std::shared_ptr<const LieAlgebra>& algebra, std::mt19937_64& rng);

}  // namespace nilgrp
