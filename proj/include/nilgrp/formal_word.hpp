#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nilgrp/errors.hpp"
#include "nilgrp/group.hpp"

namespace nilgrp {

struct FormalWord;

// One factor of a word: an atom raised to a nonzero integer exponent.
struct Factor {
  enum class Kind { kSymbol, kGroup, kCommutator };

  Kind kind = Kind::kSymbol;
  std::string symbol;            // kSymbol
  std::vector<FormalWord> parts;  // kGroup: 1 word; kCommutator: 2 words
  std::int64_t exponent = 1;

  static Factor letter(std::string symbol, std::int64_t exponent = 1);
  static Factor group(FormalWord word, std::int64_t exponent = 1);
  static Factor commutator(FormalWord left, FormalWord right, std::int64_t exponent = 1);
};

struct FormalWord {
  std::vector<Factor> factors;

  bool empty() const { return factors.empty(); }
};

bool operator==(const Factor& a, const Factor& b);
bool operator==(const FormalWord& a, const FormalWord& b);
// Same atom, exponents ignored.
bool same_atom(const Factor& a, const Factor& b);

// Grammar (whitespace separates factors):
//   word   := factor+
//   factor := atom ("^" int)?
//   atom   := symbol | "(" word ")" | "c(" word "," word ")"
//   symbol := [a-z][a-z0-9_]*     int := "-"? [1-9][0-9]*
// Blank input parses to the empty word. When alphabet is non-empty, symbols
// outside it are rejected.
FormalWord parse_word(std::string_view text, std::span<const std::string> alphabet = {});
std::string serialize_word(const FormalWord& w);

// Letters after expanding exponents and commutators; c(u,v) counts 2(|u|+|v|).
std::int64_t word_length(const FormalWord& w);
// Per-symbol share of word_length.
std::map<std::string, std::int64_t> letter_counts(const FormalWord& w);

// Replaces every letter x by x^k.
FormalWord substitute_powers(const FormalWord& w, std::int64_t k);
// Merges adjacent factors with equal atoms, recursively; drops zero exponents.
FormalWord merge_adjacent(const FormalWord& w);

// Homomorphic evaluation. G needs mul, inverse, power(G, int64) and
// commutator found by argument-dependent lookup.
template <class G>
G evaluate_word(const FormalWord& w, const std::map<std::string, G>& env, const G& identity) {
  G acc = identity;
  for (const auto& f : w.factors) {
    G atom = identity;
    switch (f.kind) {
      case Factor::Kind::kSymbol: {
        auto it = env.find(f.symbol);
        if (it == env.end()) throw InvalidArgument("unbound symbol '" + f.symbol + "'");
        atom = it->second;
        break;
      }
      case Factor::Kind::kGroup:
        atom = evaluate_word(f.parts[0], env, identity);
        break;
      case Factor::Kind::kCommutator:
        atom = commutator(evaluate_word(f.parts[0], env, identity), evaluate_word(f.parts[1], env, identity));
        break;
    }
    acc = mul(acc, power(atom, f.exponent));
  }
  return acc;
}

// Evaluates with each generator symbol of the algebra bound to its generator.
GroupElement evaluate_on_generators(const FormalWord& w, const LieAlgebra& algebra);

}  // namespace nilgrp
