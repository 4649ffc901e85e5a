#include "nilgrp/assoc_poly.hpp"

#include "nilgrp/errors.hpp"

namespace nilgrp {

AssocPoly::AssocPoly(int num_letters, int max_degree)
    : num_letters_(num_letters), max_degree_(max_degree), components_(static_cast<std::size_t>(max_degree) + 1) {
  if (num_letters < 1 || max_degree < 0) throw InvalidArgument("bad associative algebra shape");
  WordCode p = 1;
  for (int d = 0; d <= max_degree; ++d) {
    letter_powers_.push_back(p);
    p *= static_cast<WordCode>(num_letters);
  }
}

AssocPoly AssocPoly::one(int num_letters, int max_degree) {
  AssocPoly p(num_letters, max_degree);
  p.add_term(0, 0, Rational(1));
  return p;
}

AssocPoly AssocPoly::letter(int num_letters, int max_degree, int letter) {
  AssocPoly p(num_letters, max_degree);
  if (max_degree >= 1) p.add_term(1, static_cast<WordCode>(letter), Rational(1));
  return p;
}

void AssocPoly::add_term(int degree, WordCode word, const Rational& coeff) {
  if (degree > max_degree_ || coeff.is_zero()) return;
  auto& comp = components_[degree];
  auto [it, inserted] = comp.try_emplace(word, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) comp.erase(it);
  }
}

bool AssocPoly::is_zero() const {
  for (const auto& c : components_)
    if (!c.empty()) return false;
  return true;
}

AssocPoly& AssocPoly::operator+=(const AssocPoly& o) {
  if (o.num_letters_ != num_letters_ || o.max_degree_ != max_degree_)
    throw ContextMismatch("associative algebra mismatch");
  for (int d = 0; d <= max_degree_; ++d)
    for (const auto& [w, c] : o.components_[d]) add_term(d, w, c);
  return *this;
}

AssocPoly& AssocPoly::operator-=(const AssocPoly& o) {
  if (o.num_letters_ != num_letters_ || o.max_degree_ != max_degree_)
    throw ContextMismatch("associative algebra mismatch");
  for (int d = 0; d <= max_degree_; ++d)
    for (const auto& [w, c] : o.components_[d]) add_term(d, w, -c);
  return *this;
}

AssocPoly& AssocPoly::operator*=(const Rational& s) {
  if (s.is_zero()) {
    for (auto& c : components_) c.clear();
    return *this;
  }
  for (auto& comp : components_)
    for (auto& [w, c] : comp) c *= s;
  return *this;
}

AssocPoly operator*(const AssocPoly& a, const AssocPoly& b) {
  if (a.num_letters_ != b.num_letters_ || a.max_degree_ != b.max_degree_)
    throw ContextMismatch("associative algebra mismatch");
  AssocPoly out(a.num_letters_, a.max_degree_);
  for (int da = 0; da <= a.max_degree_; ++da) {
    if (a.components_[da].empty()) continue;
    for (int db = 0; da + db <= a.max_degree_; ++db) {
      const WordCode shift = a.letter_powers_[db];
      for (const auto& [wa, ca] : a.components_[da])
        for (const auto& [wb, cb] : b.components_[db]) out.add_term(da + db, wa * shift + wb, ca * cb);
    }
  }
  return out;
}

AssocPoly exp_series(const AssocPoly& a) {
  if (a.has_constant_term()) throw InvalidArgument("exp of a series with constant term");
  AssocPoly result = AssocPoly::one(a.num_letters(), a.max_degree());
  AssocPoly term = result;
  for (int k = 1; k <= a.max_degree(); ++k) {
    term = term * a;
    term *= Rational(1, k);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

AssocPoly log1p_series(const AssocPoly& a) {
  if (a.has_constant_term()) throw InvalidArgument("log of a series without unit constant term");
  AssocPoly result(a.num_letters(), a.max_degree());
  AssocPoly power = a;
  for (int k = 1; k <= a.max_degree(); ++k) {
    if (power.is_zero()) break;
    result += power * Rational(k % 2 == 1 ? 1 : -1, k);
    power = power * a;
  }
  return result;
}

}  // namespace nilgrp
