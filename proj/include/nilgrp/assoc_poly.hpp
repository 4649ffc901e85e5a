#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nilgrp/rational.hpp"

namespace nilgrp {

// Word over the alphabet {0..L-1} encoded as a base-L integer, first letter
// most significant. Within one length, numeric order is lexicographic order.
using WordCode = std::uint32_t;

// Element of the free associative algebra on L letters, truncated above
// degree n. Sparse per degree.
class AssocPoly {
 public:
  using Component = std::map<WordCode, Rational>;

  AssocPoly(int num_letters, int max_degree);

  static AssocPoly one(int num_letters, int max_degree);
  static AssocPoly letter(int num_letters, int max_degree, int letter);

  int num_letters() const { return num_letters_; }
  int max_degree() const { return max_degree_; }

  const Component& component(int degree) const { return components_[degree]; }
  void add_term(int degree, WordCode word, const Rational& coeff);

  bool is_zero() const;
  bool has_constant_term() const { return !components_[0].empty(); }

  AssocPoly& operator+=(const AssocPoly& o);
  AssocPoly& operator-=(const AssocPoly& o);
  AssocPoly& operator*=(const Rational& s);
  friend AssocPoly operator+(AssocPoly a, const AssocPoly& b) { return a += b; }
  friend AssocPoly operator-(AssocPoly a, const AssocPoly& b) { return a -= b; }
  friend AssocPoly operator*(AssocPoly a, const Rational& s) { return a *= s; }
  // Truncated concatenation product.
  friend AssocPoly operator*(const AssocPoly& a, const AssocPoly& b);
  friend bool operator==(const AssocPoly& a, const AssocPoly& b) = default;

 private:
  int num_letters_;
  int max_degree_;
  std::vector<WordCode> letter_powers_;  // L^d
  std::vector<Component> components_;    // index = degree
};

// exp(a) = sum a^k / k!; a must have no constant term.
AssocPoly exp_series(const AssocPoly& a);
// log(1 + a) = sum (-1)^{k+1} a^k / k; a must have no constant term.
AssocPoly log1p_series(const AssocPoly& a);

}  // namespace nilgrp
