#include "nilgrp/identities.hpp"

#include <algorithm>
#include <numeric>

#include "nilgrp/bch.hpp"

namespace nilgrp {

void check_synthesis_limits(const LieAlgebra& algebra, const SynthesisLimits& limits) {
  if (algebra.step() > limits.max_step)
    throw InvalidArgument("step " + std::to_string(algebra.step()) + " exceeds the synthesis limit " +
                          std::to_string(limits.max_step));
  if (algebra.num_generators() > limits.max_generators)
    throw InvalidArgument("L = " + std::to_string(algebra.num_generators()) + " exceeds the synthesis limit " +
                          std::to_string(limits.max_generators));
}

namespace {

LieElement sum_of_generators(const LieAlgebra& algebra) {
  LieElement out = algebra.zero();
  for (const auto& g : algebra.generators()) out += g;
  return out;
}

DegreeTables decompose_degrees(const LieElement& x, int from_degree) {
  const int n = x.algebra().step();
  DegreeTables tables(static_cast<std::size_t>(n) + 1);
  for (int d = std::max(from_degree, 1); d <= n; ++d) tables[d] = rightnormed_decomposition(x, d);
  return tables;
}

void require_vanishing_through(const LieElement& x, int degree, const char* what) {
  if (auto lo = x.min_degree(); lo && *lo <= degree) throw InvariantViolation(what);
}

// Smallest e > 0 with e^level * s integral for every s.
Integer minimal_root_scale(const PatternCoeffs& coeffs, int level) {
  Integer scale = 1;
  for (const auto& [alpha, s] : coeffs) {
    Integer q = s.denominator();
    Integer e = 1;
    for (Integer p = 2; p * p <= q; ++p) {
      int mult = 0;
      while (q % p == 0) {
        q /= p;
        ++mult;
      }
      for (int i = 0; i < (mult + level - 1) / level; ++i) e *= p;
    }
    if (q > 1) e *= q;
    scale = lcm(scale, e);
  }
  return scale;
}

FormalWord letter_word(const std::string& symbol, std::int64_t exponent = 1) {
  return FormalWord{{Factor::letter(symbol, exponent)}};
}

void append(FormalWord& w, const FormalWord& tail) {
  w.factors.insert(w.factors.end(), tail.factors.begin(), tail.factors.end());
}

struct BaseSynthesis {
  std::vector<std::int64_t> divisors;
  FormalWord word;  // log(word) = divisors.back() * sum X_i + O(level + 1)
};

BaseSynthesis build_base(int level, const LieAlgebra& algebra, CorrectionShape shape) {
  check_synthesis_limits(algebra);
  if (level < 1 || level > algebra.step())
    throw InvalidArgument("level must satisfy 1 <= j <= n, got " + std::to_string(level));
  const auto& symbols = algebra.context().generator_symbols;
  const LieElement unit_target = sum_of_generators(algebra);

  BaseSynthesis base;
  for (const auto& s : symbols) append(base.word, letter_word(s));
  std::int64_t scale = 1;
  base.divisors.push_back(scale);
  for (int d = 2; d <= level; ++d) {
    LieElement residual = unit_target * Rational(scale) - evaluate_on_generators(base.word, algebra).log();
    require_vanishing_through(residual, d - 1, "synthesis residual has a low-degree component");
    PatternCoeffs coeffs = rightnormed_decomposition(residual, d);
    const std::int64_t e = to_int64(minimal_root_scale(coeffs, d));
    if (e > 1) {
      // x -> x^e multiplies the degree-d part of every log by e^d.
      base.word = substitute_powers(base.word, e);
      scale *= e;
      const Rational factor = pow(Rational(e), static_cast<unsigned>(d));
      for (auto& [alpha, s] : coeffs) s *= factor;
    }
    base.divisors.push_back(scale);
    for (const auto& [alpha, s] : coeffs) {
      if (!s.is_integer()) throw InvariantViolation("correction exponent is not integral after rescaling");
      append(base.word, correction_word(alpha, to_int64(s.numerator()), symbols, shape));
    }
  }
  return base;
}

}  // namespace

SynthesisCertificate make_certificate(const LieAlgebra& algebra, const LieElement& target, FormalWord word) {
  LieElement residual = target - evaluate_on_generators(word, algebra).log();
  auto lo = residual.min_degree();
  return SynthesisCertificate{target, std::move(word), std::move(residual), lo};
}

bool validate_certificate(const SynthesisCertificate& cert) {
  const LieAlgebra& algebra = cert.target.algebra();
  const LieElement value = evaluate_on_generators(cert.word, algebra).log();
  if (!(value + cert.residual == cert.target)) return false;
  return cert.residual.min_degree() == cert.min_residual_degree;
}

DegreeTables iterated_expansion(const LieAlgebra& algebra) {
  const LieElement expansion = multi_bch(algebra.generators()) - sum_of_generators(algebra);
  return decompose_degrees(expansion, 2);
}

DegreeTables commutator_log_tail(const BracketPattern& alpha, const LieAlgebra& algebra) {
  if (alpha.arity() < 2 || alpha.arity() > algebra.step())
    throw InvalidArgument("commutator pattern arity must lie in 2..n");
  std::vector<GroupElement> gens;
  for (int i = 0; i < algebra.num_generators(); ++i) gens.push_back(GroupElement::generator(algebra, i));
  const LieElement h = LieElement(algebra.zero().algebra_ptr(), algebra.pattern_value(alpha));
  const LieElement tail = nested_commutator(alpha, gens).log() - h;
  require_vanishing_through(tail, alpha.arity(), "commutator log differs from h_alpha at low degree");
  return decompose_degrees(tail, alpha.arity() + 1);
}

FormalWord correction_word(const BracketPattern& alpha, std::int64_t exponent,
                           const std::vector<std::string>& symbols, CorrectionShape shape) {
  if (alpha.arity() < 2) throw InvalidArgument("correction pattern needs arity >= 2");
  if (exponent == 0) return {};
  auto sym = [&](int pos) -> const std::string& { return symbols.at(alpha.indices[pos] - 1); };
  FormalWord inner = letter_word(sym(alpha.arity() - 1));
  for (int pos = alpha.arity() - 2; pos >= 1; --pos)
    inner = FormalWord{{Factor::commutator(letter_word(sym(pos)), std::move(inner))}};
  if (shape == CorrectionShape::kInnerExponent)
    return FormalWord{{Factor::commutator(letter_word(sym(0), exponent), std::move(inner))}};
  // c(u, v)^-1 = c(v, u).
  if (exponent < 0) return FormalWord{{Factor::commutator(std::move(inner), letter_word(sym(0)), -exponent)}};
  return FormalWord{{Factor::commutator(letter_word(sym(0)), std::move(inner), exponent)}};
}

LogProductDecomposition log_product_decomposition(int level, const LieAlgebra& algebra, CorrectionShape shape) {
  check_synthesis_limits(algebra);
  if (level < 1 || level > algebra.step()) throw InvalidArgument("level must satisfy 1 <= J <= n");
  const auto& symbols = algebra.context().generator_symbols;
  LogProductDecomposition out{level, {}, {}, sum_of_generators(algebra) - multi_bch(algebra.generators())};
  for (int i = 2; i <= level; ++i) {
    const PatternCoeffs t = rightnormed_decomposition(out.tail, i);
    Integer common = 1;
    for (const auto& [alpha, c] : t) common = lcm(common, c.denominator());
    const Rational beta(Integer(1), common);
    FormalWord word;
    for (const auto& [alpha, c] : t) {
      const Rational m = c * Rational(common);
      append(word, correction_word(alpha, to_int64(m.numerator()), symbols, shape));
    }
    out.tail -= evaluate_on_generators(word, algebra).log() * beta;
    require_vanishing_through(out.tail, i, "log product tail kept a component at the current level");
    out.beta.push_back(beta);
    out.correction_words.push_back(std::move(word));
  }
  return out;
}

namespace {

std::string divisibility_message(std::int64_t t, const std::vector<std::int64_t>& divisors) {
  std::string list;
  for (std::size_t i = 0; i < divisors.size(); ++i) list += (i ? ", " : "") + std::to_string(divisors[i]);
  return "divisibility violation: T = " + std::to_string(t) + " must be divisible by each of c_1..c_" +
         std::to_string(divisors.size()) + " = [" + list + "]";
}

}  // namespace

DivisibilityViolation::DivisibilityViolation(std::int64_t t, std::vector<std::int64_t> divisors)
    : InvalidArgument(divisibility_message(t, divisors)), divisors_(std::move(divisors)) {}

std::vector<std::int64_t> power_word_divisors(int level, const LieAlgebra& algebra, CorrectionShape shape) {
  return build_base(level, algebra, shape).divisors;
}

PowerWordSynthesis power_word_synthesis(std::int64_t t, int level, const LieAlgebra& algebra,
                                        CorrectionShape shape) {
  BaseSynthesis base = build_base(level, algebra, shape);
  for (std::int64_t c : base.divisors)
    if (t % c != 0) throw DivisibilityViolation(t, base.divisors);
  FormalWord word = t == 0 ? FormalWord{} : substitute_powers(base.word, t / base.divisors.back());
  const LieElement target = sum_of_generators(algebra) * Rational(t);
  SynthesisCertificate cert = make_certificate(algebra, target, word);
  if (cert.min_residual_degree && *cert.min_residual_degree <= level)
    throw InvariantViolation("power word residual below the requested level");
  return PowerWordSynthesis{std::move(base.divisors), std::move(word), std::move(cert)};
}

SumWord sum_word(const LieAlgebra& algebra, CorrectionShape shape) {
  if (algebra.num_generators() != 2) throw InvalidArgument("sum_word needs exactly two generators");
  const auto divisors = power_word_divisors(algebra.step(), algebra, shape);
  std::int64_t m = 1;
  for (std::int64_t c : divisors) m = std::lcm(m, c);
  PowerWordSynthesis synth = power_word_synthesis(m, algebra.step(), algebra, shape);
  if (!synth.certificate.exact()) throw InvariantViolation("sum word is not exact at the top level");
  const std::int64_t length = word_length(synth.word);
  return SumWord{m, std::move(synth.word), length, std::move(synth.certificate)};
}

SumWord sum_word(int step) { return sum_word(*LieAlgebra::get(AlgebraContext{2, step, {"a", "b"}})); }

std::vector<ScaleProbe> probe_smaller_scales(int step) {
  std::vector<ScaleProbe> out;
  if (step > 3) return out;
  const auto algebra = LieAlgebra::get(AlgebraContext{2, step, {"a", "b"}});
  const auto& symbols = algebra->context().generator_symbols;
  const std::int64_t m = sum_word(*algebra).m;
  const LieElement unit_target = sum_of_generators(*algebra);
  for (std::int64_t candidate = 1; candidate < m; ++candidate) {
    if (m % candidate != 0) continue;
    FormalWord word = letter_word(symbols[0], candidate);
    append(word, letter_word(symbols[1], candidate));
    bool integral = true;
    for (int d = 2; d <= step && integral; ++d) {
      const LieElement residual = unit_target * Rational(candidate) - evaluate_on_generators(word, *algebra).log();
      for (const auto& [alpha, s] : rightnormed_decomposition(residual, d)) {
        if (!s.is_integer()) {
          integral = false;
          break;
        }
        append(word, correction_word(alpha, to_int64(s.numerator()), symbols));
      }
    }
    bool exact = false;
    if (integral) exact = make_certificate(*algebra, unit_target * Rational(candidate), word).exact();
    out.push_back(ScaleProbe{candidate, exact});
  }
  return out;
}

VandermondeRecipe vandermonde_recipe(int step, std::int64_t scale) {
  if (step < 2) throw InvalidArgument("Vandermonde recipe needs step >= 2");
  if (scale < 1) throw InvalidArgument("Vandermonde scale must be positive");
  const std::size_t size = static_cast<std::size_t>(step) - 1;
  VandermondeRecipe recipe;
  recipe.step = step;
  recipe.scale = scale;
  recipe.matrix = RationalMatrix(size, size);
  for (std::size_t s = 1; s <= size; ++s) {
    recipe.sample_points.push_back(static_cast<std::int64_t>(s));
    for (std::size_t j = 1; j <= size; ++j)
      recipe.matrix(s - 1, j - 1) = pow(Rational(static_cast<std::int64_t>(s)), static_cast<unsigned>(j));
  }
  auto inv = inverse(recipe.matrix);
  if (!inv) throw InvariantViolation("Vandermonde matrix on distinct points is singular");
  recipe.inverse = std::move(*inv);
  return recipe;
}

LieElement extract_bracket(const GroupElement& a, const GroupElement& b, const VandermondeRecipe& recipe) {
  const LieAlgebra& algebra = a.log().algebra();
  if (!(algebra.context() == b.log().algebra().context()))
    throw ContextMismatch("extract_bracket operands from different contexts");
  if (recipe.step != algebra.step()) throw ContextMismatch("recipe step does not match the algebra step");
  const GroupElement b_scaled = power(b, recipe.scale);
  const LieElement scaled_log = b_scaled.log();
  // y_s = log(a^s b^m a^-s) - m log b = sum_j s^j u_j, u_j = ad(a)^j (m log b) / j!.
  std::vector<LieElement> samples;
  for (std::int64_t s : recipe.sample_points)
    samples.push_back(mul(mul(power(a, s), b_scaled), power(a, -s)).log() - scaled_log);
  LieElement u1 = algebra.zero();
  for (std::size_t s = 0; s < samples.size(); ++s) u1 += samples[s] * recipe.inverse(0, s);
  return u1 * Rational(1, recipe.scale);
}

ContainmentCertificate containment_certificate(int level, int step) {
  if (level < 0) throw InvalidArgument("containment level must be nonnegative");
  if (step < 1) throw InvalidArgument("step must be positive");
  ContainmentCertificate cert;
  cert.level = level;
  cert.step = step;
  if (level == 0) {
    cert.rationals = {Rational(1)};
    cert.exponents = {1};
    return cert;
  }
  if (level >= step) {
    // B_j = {0} by nilpotence.
    cert.power = 0;
    return cert;
  }
  const ContainmentCertificate prev = containment_certificate(level - 1, step);

  // Clear denominators: Q b = sum p_i u_i with u_i in log(A^{k_i}).
  Integer common = 1;
  for (const auto& q : prev.rationals) common = lcm(common, q.denominator());
  std::vector<Integer> numerators;
  for (const auto& q : prev.rationals) numerators.push_back((q * Rational(common)).numerator());

  // Fold the terms with the sum word: m (acc + F v) = log w(e^acc, e^{F v}).
  Integer fold_scale = 1;
  Integer power = abs(Rational(numerators[0])).numerator() * prev.exponents[0];
  if (prev.rationals.size() > 1) {
    const SumWord sw = sum_word(step);
    const auto counts = letter_counts(sw.word);
    const Integer count_a = counts.count("a") ? counts.at("a") : 0;
    const Integer count_b = counts.count("b") ? counts.at("b") : 0;
    for (std::size_t i = 1; i < prev.rationals.size(); ++i) {
      const Integer term_power = fold_scale * abs(Rational(numerators[i])).numerator() * prev.exponents[i];
      power = count_a * power + count_b * term_power;
      fold_scale *= sw.m;
    }
  }
  cert.scale = fold_scale * common;
  cert.power = power;

  // [a, b] = sum_s (w_s / M) log(e^{sa} e^{Mb} e^{-sa}) - (sum_s w_s / M) (M b).
  const VandermondeRecipe recipe = vandermonde_recipe(step, 1);
  const Rational inv_scale(Integer(1), cert.scale);
  Rational row_sum = 0;
  for (std::size_t s = 0; s < recipe.sample_points.size(); ++s) {
    const Rational w = recipe.inverse(0, s);
    row_sum += w;
    if (w.is_zero()) continue;
    cert.rationals.push_back(w * inv_scale);
    cert.exponents.push_back(cert.power + 2 * recipe.sample_points[s]);
  }
  if (!row_sum.is_zero()) {
    cert.rationals.push_back(-row_sum * inv_scale);
    cert.exponents.push_back(cert.power);
  }
  return cert;
}

}  // namespace nilgrp
