#include "nilgrp/formal_word.hpp"

#include <algorithm>

namespace nilgrp {

Factor Factor::letter(std::string symbol, std::int64_t exponent) {
  Factor f;
  f.kind = Kind::kSymbol;
  f.symbol = std::move(symbol);
  f.exponent = exponent;
  return f;
}

Factor Factor::group(FormalWord word, std::int64_t exponent) {
  Factor f;
  f.kind = Kind::kGroup;
  f.parts.push_back(std::move(word));
  f.exponent = exponent;
  return f;
}

Factor Factor::commutator(FormalWord left, FormalWord right, std::int64_t exponent) {
  Factor f;
  f.kind = Kind::kCommutator;
  f.parts.push_back(std::move(left));
  f.parts.push_back(std::move(right));
  f.exponent = exponent;
  return f;
}

bool same_atom(const Factor& a, const Factor& b) {
  return a.kind == b.kind && a.symbol == b.symbol && a.parts == b.parts;
}

bool operator==(const Factor& a, const Factor& b) { return a.exponent == b.exponent && same_atom(a, b); }

bool operator==(const FormalWord& a, const FormalWord& b) { return a.factors == b.factors; }

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> alphabet) : text_(text), alphabet_(alphabet) {}

  FormalWord parse_top() {
    skip_space();
    if (pos_ == text_.size()) return {};
    FormalWord w = parse_word();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  bool at_atom_start() const {
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || (c >= 'a' && c <= 'z');
  }

  FormalWord parse_word() {
    FormalWord w;
    skip_space();
    if (!at_atom_start()) fail("expected a factor");
    while (at_atom_start()) {
      w.factors.push_back(parse_factor());
      skip_space();
    }
    return w;
  }

  Factor parse_factor() {
    Factor f = parse_atom();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      f.exponent = parse_int();
    }
    return f;
  }

  Factor parse_atom() {
    if (text_[pos_] == '(') {
      ++pos_;
      FormalWord inner = parse_word();
      expect(')');
      return Factor::group(std::move(inner));
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           ((text_[pos_] >= 'a' && text_[pos_] <= 'z') || (text_[pos_] >= '0' && text_[pos_] <= '9') ||
            text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "c" && pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      FormalWord left = parse_word();
      expect(',');
      FormalWord right = parse_word();
      expect(')');
      return Factor::commutator(std::move(left), std::move(right));
    }
    if (!alphabet_.empty() && std::find(alphabet_.begin(), alphabet_.end(), name) == alphabet_.end()) {
      pos_ = start;
      fail("unknown symbol '" + name + "'");
    }
    return Factor::letter(std::move(name));
  }

  std::int64_t parse_int() {
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    if (pos_ >= text_.size() || text_[pos_] < '1' || text_[pos_] > '9') fail("expected a nonzero integer exponent");
    std::int64_t value = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      if (value > (INT64_MAX - 9) / 10) {
        pos_ = start;
        fail("exponent out of range");
      }
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return negative ? -value : value;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view text_;
  std::span<const std::string> alphabet_;
  std::size_t pos_ = 0;
};

void serialize_into(const FormalWord& w, std::string& out) {
  for (std::size_t i = 0; i < w.factors.size(); ++i) {
    if (i) out += ' ';
    const Factor& f = w.factors[i];
    switch (f.kind) {
      case Factor::Kind::kSymbol:
        out += f.symbol;
        break;
      case Factor::Kind::kGroup:
        out += '(';
        serialize_into(f.parts[0], out);
        out += ')';
        break;
      case Factor::Kind::kCommutator:
        out += "c(";
        serialize_into(f.parts[0], out);
        out += ',';
        serialize_into(f.parts[1], out);
        out += ')';
        break;
    }
    if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
  }
}

void count_into(const FormalWord& w, std::int64_t scale, std::map<std::string, std::int64_t>& out) {
  for (const auto& f : w.factors) {
    const std::int64_t s = scale * (f.exponent < 0 ? -f.exponent : f.exponent);
    switch (f.kind) {
      case Factor::Kind::kSymbol:
        out[f.symbol] += s;
        break;
      case Factor::Kind::kGroup:
        count_into(f.parts[0], s, out);
        break;
      case Factor::Kind::kCommutator:
        count_into(f.parts[0], 2 * s, out);
        count_into(f.parts[1], 2 * s, out);
        break;
    }
  }
}

}  // namespace

FormalWord parse_word(std::string_view text, std::span<const std::string> alphabet) {
  return Parser(text, alphabet).parse_top();
}

std::string serialize_word(const FormalWord& w) {
  std::string out;
  serialize_into(w, out);
  return out;
}

std::map<std::string, std::int64_t> letter_counts(const FormalWord& w) {
  std::map<std::string, std::int64_t> out;
  count_into(w, 1, out);
  return out;
}

std::int64_t word_length(const FormalWord& w) {
  std::int64_t total = 0;
  for (const auto& [s, n] : letter_counts(w)) total += n;
  return total;
}

FormalWord substitute_powers(const FormalWord& w, std::int64_t k) {
  if (k == 0) return {};
  FormalWord out;
  for (Factor f : w.factors) {
    if (f.kind == Factor::Kind::kSymbol)
      f.exponent *= k;
    else
      for (auto& part : f.parts) part = substitute_powers(part, k);
    out.factors.push_back(std::move(f));
  }
  return out;
}

FormalWord merge_adjacent(const FormalWord& w) {
  FormalWord out;
  for (Factor f : w.factors) {
    for (auto& part : f.parts) part = merge_adjacent(part);
    if (f.exponent == 0) continue;
    // Groups and commutators with an empty part are the identity.
    if (std::any_of(f.parts.begin(), f.parts.end(), [](const FormalWord& p) { return p.empty(); })) continue;
    if (!out.factors.empty() && same_atom(out.factors.back(), f)) {
      out.factors.back().exponent += f.exponent;
      if (out.factors.back().exponent == 0) out.factors.pop_back();
      continue;
    }
    out.factors.push_back(std::move(f));
  }
  return out;
}

GroupElement evaluate_on_generators(const FormalWord& w, const LieAlgebra& algebra) {
  std::map<std::string, GroupElement> env;
  for (int i = 0; i < algebra.num_generators(); ++i)
    env.emplace(algebra.context().generator_symbols[i], GroupElement::generator(algebra, i));
  return evaluate_word(w, env, GroupElement::identity(algebra));
}

}  // namespace nilgrp
