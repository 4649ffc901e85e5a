#include "nilgrp/free_lie_algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "nilgrp/errors.hpp"
#include "nilgrp/linear_algebra.hpp"

namespace nilgrp {

bool is_valid_symbol(std::string_view s) {
  if (s.empty() || s.front() < 'a' || s.front() > 'z') return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; });
}

AlgebraContext AlgebraContext::with_default_symbols(int num_generators, int step) {
  AlgebraContext ctx{num_generators, step, {}};
  for (int i = 1; i <= num_generators; ++i) ctx.generator_symbols.push_back("x" + std::to_string(i));
  return ctx;
}

void AlgebraContext::validate() const {
  if (num_generators < 1) throw InvalidArgument("need at least one generator");
  if (step < 1) throw InvalidArgument("step must be positive");
  if (static_cast<int>(generator_symbols.size()) != num_generators)
    throw InvalidArgument("generator symbol count does not match L");
  std::set<std::string> seen;
  for (const auto& s : generator_symbols) {
    if (!is_valid_symbol(s)) throw InvalidArgument("invalid generator symbol '" + s + "'");
    if (s == "c") throw InvalidArgument("'c' is reserved for commutators");
    if (!seen.insert(s).second) throw InvalidArgument("duplicate generator symbol '" + s + "'");
  }
  // Word codes are 32-bit.
  double words = 1;
  for (int d = 0; d < step; ++d) words *= num_generators;
  if (words >= 4294967296.0) throw InvalidArgument("L^n too large for word encoding");
}

std::string BracketPattern::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(indices[i]);
  }
  return out + ")";
}

std::vector<BracketPattern> all_patterns(int arity, int num_generators) {
  std::vector<BracketPattern> out;
  if (arity < 1) return out;
  std::vector<int> cur(static_cast<std::size_t>(arity), 1);
  while (true) {
    out.push_back(BracketPattern{cur});
    int pos = arity - 1;
    while (pos >= 0 && cur[pos] == num_generators) cur[pos--] = 1;
    if (pos < 0) break;
    ++cur[pos];
  }
  return out;
}

namespace {

// Duval's algorithm: Lyndon words of length <= n in lexicographic order.
std::vector<std::vector<int>> lyndon_words(int num_letters, int max_len) {
  std::vector<std::vector<int>> out;
  std::vector<int> w{0};
  while (!w.empty()) {
    out.push_back(w);
    const std::size_t m = w.size();
    while (static_cast<int>(w.size()) < max_len) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == num_letters - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

WordCode encode(const std::vector<int>& letters, std::size_t begin, std::size_t end, int num_letters) {
  WordCode code = 0;
  for (std::size_t i = begin; i < end; ++i) code = code * static_cast<WordCode>(num_letters) + letters[i];
  return code;
}

WordCode power_of(int base, int exp) {
  WordCode p = 1;
  for (int i = 0; i < exp; ++i) p *= static_cast<WordCode>(base);
  return p;
}

struct ContextKeyLess {
  bool operator()(const AlgebraContext& a, const AlgebraContext& b) const {
    return std::tie(a.num_generators, a.step, a.generator_symbols) <
           std::tie(b.num_generators, b.step, b.generator_symbols);
  }
};

}  // namespace

LieAlgebra::LieAlgebra(AlgebraContext ctx) : ctx_(std::move(ctx)) {
  ctx_.validate();
  const int L = ctx_.num_generators;
  const int n = ctx_.step;

  auto words = lyndon_words(L, n);
  std::stable_sort(words.begin(), words.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });

  lyndon_index_.resize(static_cast<std::size_t>(n) + 1);
  degree_offsets_.assign(static_cast<std::size_t>(n) + 2, 0);
  for (const auto& w : words) {
    HallWord hw;
    hw.letters = w;
    hw.code = encode(w, 0, w.size(), L);
    hw.multidegree.assign(static_cast<std::size_t>(L), 0);
    for (int letter : w) ++hw.multidegree[letter];
    const int idx = static_cast<int>(basis_.size());
    if (w.size() > 1) {
      // Standard factorization: right factor is the longest proper Lyndon suffix.
      for (std::size_t i = 1; i < w.size(); ++i) {
        const auto& suffix_index = lyndon_index_[w.size() - i];
        auto it = suffix_index.find(encode(w, i, w.size(), L));
        if (it == suffix_index.end()) continue;
        hw.right = it->second;
        hw.left = lyndon_index_[i].at(encode(w, 0, i, L));
        break;
      }
      if (hw.right < 0) throw InvariantViolation("Lyndon word without standard factorization");
      hw.text = "[" + basis_[hw.left].text + "," + basis_[hw.right].text + "]";
    } else {
      hw.text = ctx_.generator_symbols[w[0]];
    }
    lyndon_index_[w.size()].emplace(hw.code, idx);
    text_index_.emplace(hw.text, idx);
    basis_.push_back(std::move(hw));
  }
  for (const auto& hw : basis_) ++degree_offsets_[hw.degree() + 1];
  for (std::size_t d = 1; d < degree_offsets_.size(); ++d) degree_offsets_[d] += degree_offsets_[d - 1];

  expansions_.resize(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto& hw = basis_[i];
    if (hw.is_leaf()) {
      expansions_[i] = {{hw.code, Rational(1)}};
      continue;
    }
    const auto& left = expansions_[hw.left];
    const auto& right = expansions_[hw.right];
    const WordCode shift_l = power_of(L, basis_[hw.right].degree());
    const WordCode shift_r = power_of(L, basis_[hw.left].degree());
    std::map<WordCode, Rational> acc;
    for (const auto& [wl, cl] : left)
      for (const auto& [wr, cr] : right) {
        acc[wl * shift_l + wr] += cl * cr;
        acc[wr * shift_r + wl] -= cl * cr;
      }
    for (auto& [w, c] : acc)
      if (!c.is_zero()) expansions_[i].emplace_back(w, std::move(c));
    if (expansions_[i].empty() || expansions_[i].front().first != hw.code ||
        expansions_[i].front().second != Rational(1))
      throw InvariantViolation("Lyndon bracket expansion is not unitriangular");
  }
}

std::shared_ptr<const LieAlgebra> LieAlgebra::get(const AlgebraContext& ctx) {
  static std::mutex registry_mutex;
  static std::map<AlgebraContext, std::shared_ptr<const LieAlgebra>, ContextKeyLess> registry;
  {
    std::lock_guard lock(registry_mutex);
    auto it = registry.find(ctx);
    if (it != registry.end()) return it->second;
  }
  auto algebra = std::make_shared<const LieAlgebra>(ctx);
  std::lock_guard lock(registry_mutex);
  return registry.try_emplace(ctx, std::move(algebra)).first->second;
}

std::shared_ptr<const LieAlgebra> LieAlgebra::get(int num_generators, int step) {
  return get(AlgebraContext::with_default_symbols(num_generators, step));
}

std::pair<int, int> LieAlgebra::degree_range(int degree) const {
  if (degree < 1 || degree > step()) return {0, 0};
  return {degree_offsets_[degree], degree_offsets_[degree + 1]};
}

std::optional<int> LieAlgebra::find(std::string_view canonical_text) const {
  auto it = text_index_.find(std::string(canonical_text));
  if (it == text_index_.end()) return std::nullopt;
  return it->second;
}

LieElement LieAlgebra::zero() const { return LieElement(shared_from_this()); }

LieElement LieAlgebra::generator(int index) const {
  if (index < 0 || index >= num_generators()) throw InvalidArgument("generator index out of range");
  return LieElement(shared_from_this(), {{index, Rational(1)}});
}

std::vector<LieElement> LieAlgebra::generators() const {
  std::vector<LieElement> out;
  for (int i = 0; i < num_generators(); ++i) out.push_back(generator(i));
  return out;
}

const LieAlgebra::Terms& LieAlgebra::bracket_basis(int i, int j) const {
  static const Terms kEmpty;
  if (i == j || basis_[i].degree() + basis_[j].degree() > step()) return kEmpty;
  const auto key = static_cast<std::uint64_t>(i) * basis_.size() + static_cast<std::uint64_t>(j);
  {
    std::lock_guard lock(cache_mutex_);
    auto it = bracket_cache_.find(key);
    if (it != bracket_cache_.end()) return it->second;
  }
  const int degree = basis_[i].degree() + basis_[j].degree();
  const WordCode shift_i = power_of(num_generators(), basis_[j].degree());
  const WordCode shift_j = power_of(num_generators(), basis_[i].degree());
  AssocPoly::Component comp;
  for (const auto& [wi, ci] : expansions_[i])
    for (const auto& [wj, cj] : expansions_[j]) {
      comp[wi * shift_i + wj] += ci * cj;
      comp[wj * shift_j + wi] -= ci * cj;
    }
  std::erase_if(comp, [](const auto& kv) { return kv.second.is_zero(); });
  Terms result = from_assoc_component(degree, std::move(comp));
  std::lock_guard lock(cache_mutex_);
  return bracket_cache_.try_emplace(key, std::move(result)).first->second;
}

const LieAlgebra::Terms& LieAlgebra::pattern_value(const BracketPattern& alpha) const {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = pattern_cache_.find(alpha);
    if (it != pattern_cache_.end()) return it->second;
  }
  Terms value = eval_bracket_pattern(alpha, generators()).terms();
  std::lock_guard lock(cache_mutex_);
  return pattern_cache_.try_emplace(alpha, std::move(value)).first->second;
}

AssocPoly LieAlgebra::to_assoc(const LieElement& x) const {
  AssocPoly out(num_generators(), step());
  for (const auto& [idx, c] : x.terms())
    for (const auto& [w, e] : expansions_[idx]) out.add_term(basis_[idx].degree(), w, c * e);
  return out;
}

LieAlgebra::Terms LieAlgebra::from_assoc_component(int degree, AssocPoly::Component comp) const {
  // The expansion of a Lyndon bracket is its own word plus lexicographically
  // larger words, so peeling off the smallest word is a triangular solve.
  Terms out;
  const auto& index = lyndon_index_[degree];
  while (!comp.empty()) {
    const auto [word, coeff] = *comp.begin();
    auto it = index.find(word);
    if (it == index.end()) throw InvariantViolation("associative polynomial is not a Lie element");
    out.emplace(it->second, coeff);
    for (const auto& [w, e] : expansions_[it->second]) {
      auto [pos, inserted] = comp.try_emplace(w, -(coeff * e));
      if (!inserted) {
        pos->second -= coeff * e;
        if (pos->second.is_zero()) comp.erase(pos);
      }
    }
  }
  return out;
}

LieElement LieAlgebra::from_assoc(const AssocPoly& p) const {
  if (p.num_letters() != num_generators() || p.max_degree() != step())
    throw ContextMismatch("associative polynomial does not match the algebra");
  if (p.has_constant_term()) throw InvariantViolation("Lie element with constant term");
  Terms out;
  for (int d = 1; d <= step(); ++d) out.merge(from_assoc_component(d, p.component(d)));
  return LieElement(shared_from_this(), std::move(out));
}

// --- LieElement ---

LieElement::LieElement(std::shared_ptr<const LieAlgebra> algebra, Terms terms)
    : algebra_(std::move(algebra)), terms_(std::move(terms)) {
  if (!algebra_) throw InvalidArgument("LieElement without an algebra");
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
  if (!terms_.empty() &&
      (terms_.begin()->first < 0 || terms_.rbegin()->first >= static_cast<int>(algebra_->basis().size())))
    throw InvalidArgument("basis index out of range");
}

void LieElement::check_same(const LieElement& o) const {
  if (algebra_ != o.algebra_ && !(algebra_->context() == o.algebra_->context()))
    throw ContextMismatch("Lie elements from different algebra contexts");
}

Rational LieElement::coefficient(int basis_index) const {
  auto it = terms_.find(basis_index);
  return it == terms_.end() ? Rational(0) : it->second;
}

LieElement LieElement::degree_component(int degree) const { return degree_band(degree, degree); }

LieElement LieElement::degree_band(int lo, int hi) const {
  Terms out;
  for (const auto& [idx, c] : terms_) {
    const int d = algebra_->basis()[idx].degree();
    if (d >= lo && d <= hi) out.emplace(idx, c);
  }
  return LieElement(algebra_, std::move(out));
}

std::vector<int> LieElement::support_degrees() const {
  std::vector<int> out;
  for (const auto& [idx, c] : terms_) {
    const int d = algebra_->basis()[idx].degree();
    if (out.empty() || out.back() != d) out.push_back(d);
  }
  return out;
}

std::optional<int> LieElement::min_degree() const {
  if (terms_.empty()) return std::nullopt;
  return algebra_->basis()[terms_.begin()->first].degree();
}

LieElement& LieElement::operator+=(const LieElement& o) {
  check_same(o);
  for (const auto& [idx, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(idx, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  check_same(o);
  for (const auto& [idx, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(idx, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

LieElement& LieElement::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, c] : terms_) c *= s;
  return *this;
}

bool operator==(const LieElement& a, const LieElement& b) {
  return a.algebra_->context() == b.algebra_->context() && a.terms_ == b.terms_;
}

std::string LieElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.to_string() << "*" << algebra_->basis()[idx].text;
  }
  return os.str();
}

// --- operations ---

std::vector<HallWord> hall_basis(const AlgebraContext& ctx) { return LieAlgebra::get(ctx)->basis(); }

LieElement bracket(const LieElement& x, const LieElement& y) {
  if (!(x.algebra().context() == y.algebra().context()))
    throw ContextMismatch("bracket of elements from different contexts");
  const LieAlgebra& alg = x.algebra();
  const auto& basis = alg.basis();
  LieElement::Terms acc;
  for (const auto& [i, ci] : x.terms()) {
    const int di = basis[i].degree();
    for (const auto& [j, cj] : y.terms()) {
      if (di + basis[j].degree() > alg.step()) break;  // terms are degree-sorted
      const Rational cij = ci * cj;
      for (const auto& [k, ck] : alg.bracket_basis(i, j)) acc[k] += cij * ck;
    }
  }
  return LieElement(x.algebra_ptr(), std::move(acc));
}

LieElement ad_power(const LieElement& a, const LieElement& b, int j) {
  if (j < 0) throw InvalidArgument("negative ad power");
  if (!(a.algebra().context() == b.algebra().context())) throw ContextMismatch("ad_power context mismatch");
  LieElement out = b;
  for (int i = 0; i < j && !out.is_zero(); ++i) out = bracket(a, out);
  return out;
}

LieElement eval_bracket_pattern(const BracketPattern& alpha, const std::vector<LieElement>& args) {
  if (args.empty()) throw InvalidArgument("no arguments for bracket pattern");
  const int L = args.front().algebra().num_generators();
  if (static_cast<int>(args.size()) != L) throw ContextMismatch("argument count must equal L");
  for (const auto& a : args)
    if (!(a.algebra().context() == args.front().algebra().context()))
      throw ContextMismatch("pattern arguments from different contexts");
  if (alpha.indices.empty()) throw InvalidArgument("empty bracket pattern");
  for (int i : alpha.indices)
    if (i < 1 || i > L) throw ContextMismatch("pattern index out of range 1..L");
  LieElement out = args[alpha.indices.back() - 1];
  for (int pos = alpha.arity() - 2; pos >= 0 && !out.is_zero(); --pos)
    out = bracket(args[alpha.indices[pos] - 1], out);
  return out;
}

PatternCoeffs rightnormed_decomposition(const LieElement& x, int degree) {
  PatternCoeffs out;
  const LieAlgebra& alg = x.algebra();
  const LieElement comp = x.degree_component(degree);
  if (comp.is_zero()) return out;
  const auto& basis = alg.basis();

  std::map<std::vector<int>, std::vector<int>> rows_by_content;
  const auto [lo, hi] = alg.degree_range(degree);
  for (int i = lo; i < hi; ++i) rows_by_content[basis[i].multidegree].push_back(i);

  std::set<std::vector<int>> contents;
  for (const auto& [idx, c] : comp.terms()) contents.insert(basis[idx].multidegree);

  const auto patterns = all_patterns(degree, alg.num_generators());
  for (const auto& content : contents) {
    std::vector<const BracketPattern*> cols;
    for (const auto& p : patterns) {
      std::vector<int> counts(static_cast<std::size_t>(alg.num_generators()), 0);
      for (int i : p.indices) ++counts[i - 1];
      if (counts == content) cols.push_back(&p);
    }
    const auto& rows = rows_by_content.at(content);
    RationalMatrix a(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto& value = alg.pattern_value(*cols[c]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        auto it = value.find(rows[r]);
        if (it != value.end()) a(r, c) = it->second;
      }
    }
    std::vector<Rational> rhs(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) rhs[r] = comp.coefficient(rows[r]);
    auto sol = solve_canonical(a, rhs);
    if (!sol) throw InvariantViolation("right-normed brackets failed to span a homogeneous component");
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!(*sol)[c].is_zero()) out.emplace(*cols[c], (*sol)[c]);
  }
  return out;
}

LieElement evaluate_pattern_combination(const LieAlgebra& algebra, const PatternCoeffs& coeffs) {
  LieElement out = algebra.zero();
  for (const auto& [alpha, c] : coeffs) out += LieElement(out.algebra_ptr(), algebra.pattern_value(alpha)) * c;
  return out;
}

LieElement random_lie_element(const std::shared_ptr<const LieAlgebra>& algebra, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> value(-2, 2);
  std::uniform_int_distribution<int> halve(0, 1);
  LieElement::Terms terms;
  for (std::size_t i = 0; i < algebra->basis().size(); ++i) {
    Rational c(value(rng), halve(rng) ? 2 : 1);
    if (!c.is_zero()) terms.emplace(static_cast<int>(i), c);
  }
  return LieElement(algebra, std::move(terms));
}

}  // namespace nilgrp
