#include "nilgrp/doubling_lab.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "nilgrp/formal_word.hpp"
#include "nilgrp/parallel.hpp"

namespace nilgrp::lab {

namespace {

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end(), MatrixLess{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_cap(std::size_t size, const LabLimits& limits, const char* what) {
  if (size > limits.max_elements)
    throw SizeCapExceeded(std::string(what) + " would exceed the cap of " + std::to_string(limits.max_elements) +
                          " elements");
}

// Pairwise combination of two sets, merged into one deduplicated set.
template <class Out, class In, class Op>
std::vector<Out> combine(const std::vector<In>& left, const std::vector<In>& right, const LabLimits& limits,
                         const char* what, Op op) {
  auto chunks = parallel_chunks(left.size(), limits.threads, [&](std::size_t begin, std::size_t end) {
    std::unordered_set<Out, MatrixHash> local;
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& r : right) {
        local.insert(op(left[i], r));
        check_cap(local.size(), limits, what);
      }
    return std::vector<Out>(local.begin(), local.end());
  });
  std::unordered_set<Out, MatrixHash> merged;
  for (auto& c : chunks)
    for (auto& x : c) {
      merged.insert(std::move(x));
      check_cap(merged.size(), limits, what);
    }
  return std::vector<Out>(merged.begin(), merged.end());
}

}  // namespace

FiniteGroupSet::FiniteGroupSet(std::size_t dim, std::vector<UnipotentMatrix> elements, std::string provenance)
    : dim_(dim), elements_(sorted_unique(std::move(elements))), provenance_(std::move(provenance)) {
  for (const auto& g : elements_) {
    if (g.dim() != dim_) throw ContextMismatch("group set element of the wrong dimension");
    index_.insert(g);
  }
}

bool FiniteGroupSet::is_symmetric() const {
  return std::all_of(elements_.begin(), elements_.end(), [&](const auto& g) { return contains(inverse(g)); });
}

LogSet::LogSet(std::size_t dim, std::vector<NilpotentMatrix> elements)
    : dim_(dim), elements_(sorted_unique(std::move(elements))) {
  for (const auto& x : elements_) {
    if (x.dim() != dim_) throw ContextMismatch("log set element of the wrong dimension");
    index_.insert(x);
  }
}

std::vector<UnipotentMatrix> standard_generators(std::size_t dim) {
  std::vector<UnipotentMatrix> out;
  for (std::size_t i = 0; i + 1 < dim; ++i)
    for (int sign : {1, -1}) {
      RationalMatrix m = RationalMatrix::identity(dim);
      m(i, i + 1) = sign;
      out.emplace_back(std::move(m));
    }
  return out;
}

FiniteGroupSet generate_ball(std::size_t dim, const std::vector<UnipotentMatrix>& generators, int radius,
                             const LabLimits& limits) {
  if (radius < 0) throw InvalidArgument("radius must be nonnegative");
  FiniteGroupSet gens(dim, generators, "generators");
  if (!gens.is_symmetric()) throw InvalidArgument("ball generators must be closed under inverse");
  std::unordered_set<UnipotentMatrix, MatrixHash> seen{UnipotentMatrix::identity(dim)};
  std::vector<UnipotentMatrix> frontier{UnipotentMatrix::identity(dim)};
  for (int r = 0; r < radius && !frontier.empty(); ++r) {
    auto next = combine<UnipotentMatrix>(frontier, gens.elements(), limits, "ball",
                                         [](const auto& g, const auto& s) { return mul(g, s); });
    frontier.clear();
    for (auto& g : next)
      if (seen.insert(g).second) frontier.push_back(std::move(g));
    check_cap(seen.size(), limits, "ball");
    std::sort(frontier.begin(), frontier.end(), MatrixLess{});
  }
  return FiniteGroupSet(dim, std::vector<UnipotentMatrix>(seen.begin(), seen.end()),
                        "ball(dim=" + std::to_string(dim) + ", radius=" + std::to_string(radius) + ")");
}

FiniteGroupSet product_set(const FiniteGroupSet& a, const FiniteGroupSet& b, const LabLimits& limits) {
  if (a.dim() != b.dim()) throw ContextMismatch("product of sets in different dimensions");
  auto elems = combine<UnipotentMatrix>(a.elements(), b.elements(), limits, "product set",
                                        [](const auto& x, const auto& y) { return mul(x, y); });
  return FiniteGroupSet(a.dim(), std::move(elems), "(" + a.provenance() + ")(" + b.provenance() + ")");
}

// A, A^2, ..., A^k. When A contains the identity, A^{p+1} = A^p u (A^p \ A^{p-1}) A,
// so only the newest layer is multiplied.
std::vector<FiniteGroupSet> power_chain(const FiniteGroupSet& a, std::int64_t k, const LabLimits& limits) {
  std::vector<FiniteGroupSet> chain{a};
  if (!a.contains(UnipotentMatrix::identity(a.dim()))) {
    for (std::int64_t p = 2; p <= k; ++p) chain.push_back(product_set(chain.back(), a, limits));
    return chain;
  }
  std::vector<UnipotentMatrix> layer = a.elements();
  for (std::int64_t p = 2; p <= k; ++p) {
    const FiniteGroupSet& prev = chain.back();
    auto grown = combine<UnipotentMatrix>(layer, a.elements(), limits, "power set",
                                          [](const auto& x, const auto& y) { return mul(x, y); });
    layer.clear();
    for (auto& g : grown)
      if (!prev.contains(g)) layer.push_back(std::move(g));
    check_cap(prev.size() + layer.size(), limits, "power set");
    std::vector<UnipotentMatrix> all = prev.elements();
    all.insert(all.end(), layer.begin(), layer.end());
    chain.emplace_back(a.dim(), std::move(all), "(" + a.provenance() + ")^" + std::to_string(p));
  }
  return chain;
}

FiniteGroupSet power_set(const FiniteGroupSet& a, int k, const LabLimits& limits) {
  if (k < 1) throw InvalidArgument("power must be at least 1");
  if (k == 1) return a;
  return power_chain(a, k, limits).back();
}

FiniteGroupSet inverse_set(const FiniteGroupSet& a) {
  std::vector<UnipotentMatrix> elems;
  for (const auto& g : a.elements()) elems.push_back(inverse(g));
  return FiniteGroupSet(a.dim(), std::move(elems), "(" + a.provenance() + ")^-1");
}

LogSet log_set(const FiniteGroupSet& a) {
  std::vector<NilpotentMatrix> elems;
  for (const auto& g : a.elements()) elems.push_back(mat_log(g));
  LogSet out(a.dim(), std::move(elems));
  if (out.size() != a.size()) throw InvariantViolation("matrix log is not injective on the set");
  return out;
}

LogSet sumset(const LogSet& s, const LogSet& t, const LabLimits& limits) {
  if (s.dim() != t.dim()) throw ContextMismatch("sumset of sets in different dimensions");
  return LogSet(s.dim(), combine<NilpotentMatrix>(s.elements(), t.elements(), limits, "sumset",
                                                  [](const auto& x, const auto& y) { return x + y; }));
}

LogSet scale(const LogSet& s, const Rational& q) {
  std::vector<NilpotentMatrix> elems;
  for (const auto& x : s.elements()) elems.push_back(x * q);
  return LogSet(s.dim(), std::move(elems));
}

CoverReport find_cover(const FiniteGroupSet& a, const LabLimits& limits) {
  const FiniteGroupSet aa = product_set(a, a, limits);
  const FiniteGroupSet candidates = product_set(aa, inverse_set(a), limits);

  std::unordered_map<UnipotentMatrix, std::size_t, MatrixHash> aa_index;
  for (std::size_t i = 0; i < aa.size(); ++i) aa_index.emplace(aa.elements()[i], i);

  // Which elements of AA each translate x A reaches.
  auto reach_chunks = parallel_chunks(candidates.size(), limits.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t c = begin; c < end; ++c) {
      std::vector<std::size_t> hits;
      for (const auto& g : a.elements()) {
        auto it = aa_index.find(mul(candidates.elements()[c], g));
        if (it != aa_index.end()) hits.push_back(it->second);
      }
      std::sort(hits.begin(), hits.end());
      hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
      out.push_back(std::move(hits));
    }
    return out;
  });
  std::vector<std::vector<std::size_t>> reach;
  for (auto& chunk : reach_chunks)
    for (auto& r : chunk) reach.push_back(std::move(r));

  CoverReport report;
  report.set_size = a.size();
  report.product_size = aa.size();
  std::vector<bool> covered(aa.size(), false);
  std::size_t remaining = aa.size();
  while (remaining > 0) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t c = 0; c < reach.size(); ++c) {
      std::size_t gain = 0;
      for (std::size_t i : reach[c]) gain += covered[i] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (best_gain == 0) throw InvariantViolation("greedy cover stalled before covering AA");
    for (std::size_t i : reach[best])
      if (!covered[i]) {
        covered[i] = true;
        --remaining;
      }
    report.translates.push_back(candidates.elements()[best]);
  }
  report.translate_count = report.translates.size();
  report.valid = cover_is_valid(a, report.translates, limits);
  return report;
}

bool cover_is_valid(const FiniteGroupSet& a, const std::vector<UnipotentMatrix>& translates,
                    const LabLimits& limits) {
  const FiniteGroupSet aa = product_set(a, a, limits);
  std::unordered_set<UnipotentMatrix, MatrixHash> covered;
  for (const auto& x : translates)
    for (const auto& g : a.elements()) covered.insert(mul(x, g));
  return std::all_of(aa.elements().begin(), aa.elements().end(), [&](const auto& g) { return covered.count(g) > 0; });
}

SumContainmentReport check_sum_containment(const FiniteGroupSet& a, int k1, int k2, int step,
                                           const LabLimits& limits) {
  if (k1 < 1 || k2 < 1) throw InvalidArgument("powers must be at least 1");
  if (static_cast<int>(a.dim()) - 1 > step)
    throw InvalidArgument("the ambient group UT(" + std::to_string(a.dim()) + ") has step above " +
                          std::to_string(step));
  const SumWord sw = sum_word(step);
  const auto counts = letter_counts(sw.word);
  const std::int64_t count_a = counts.count("a") ? counts.at("a") : 0;
  const std::int64_t count_b = counts.count("b") ? counts.at("b") : 0;

  SumContainmentReport report;
  report.scale = sw.m;
  report.word_length = sw.length;
  report.power = sw.length * std::max(k1, k2);

  const LogSet logs1 = log_set(power_set(a, k1, limits));
  const LogSet logs2 = log_set(power_set(a, k2, limits));

  // Smallest p with g in A^p, for every g in A^power.
  std::unordered_map<UnipotentMatrix, std::int64_t, MatrixHash> first_power;
  try {
    if (report.power > limits.max_chain_power) throw SizeCapExceeded("power chain too long");
    if (a.contains(UnipotentMatrix::identity(a.dim()))) {
      std::vector<UnipotentMatrix> layer = a.elements();
      for (const auto& g : layer) first_power.emplace(g, 1);
      for (std::int64_t p = 2; p <= report.power && !layer.empty(); ++p) {
        auto grown = combine<UnipotentMatrix>(layer, a.elements(), limits, "power set",
                                              [](const auto& x, const auto& y) { return mul(x, y); });
        layer.clear();
        for (auto& g : grown)
          if (first_power.emplace(g, p).second) layer.push_back(std::move(g));
        check_cap(first_power.size(), limits, "power set");
      }
    } else {
      const auto chain = power_chain(a, report.power, limits);
      for (std::size_t p = 0; p < chain.size(); ++p)
        for (const auto& g : chain[p].elements()) first_power.emplace(g, static_cast<std::int64_t>(p) + 1);
    }
    report.mode = "exhaustive";
  } catch (const SizeCapExceeded&) {
    first_power.clear();
    report.mode = "constructive";
  }

  const Rational m(sw.m);
  const std::int64_t constructive_power = count_a * k1 + count_b * k2;
  for (const auto& u : logs1.elements())
    for (const auto& v : logs2.elements()) {
      ++report.pairs_checked;
      const UnipotentMatrix target = mat_exp((u + v) * m);
      std::int64_t witness = 0;
      if (report.mode == "exhaustive") {
        auto it = first_power.find(target);
        if (it != first_power.end()) witness = it->second;
      } else {
        // Each letter of the word is e^{+-u} in A^k1 or e^{+-v} in A^k2.
        const std::map<std::string, UnipotentMatrix> env{{"a", mat_exp(u)}, {"b", mat_exp(v)}};
        if (evaluate_word(sw.word, env, UnipotentMatrix::identity(a.dim())) == target) witness = constructive_power;
      }
      if (witness == 0 || witness > report.power)
        ++report.failures;
      else
        report.max_witness_power = std::max(report.max_witness_power, witness);
    }
  return report;
}

std::vector<LogSet> compute_b_chain(const FiniteGroupSet& a, int step, const LabLimits& limits) {
  if (step < 1) throw InvalidArgument("step must be positive");
  std::vector<LogSet> chain{log_set(a)};
  for (int j = 1; j <= step; ++j)
    chain.emplace_back(a.dim(), combine<NilpotentMatrix>(chain.front().elements(), chain.back().elements(), limits,
                                                         "commutator chain",
                                                         [](const auto& u, const auto& v) { return lie_bracket(u, v); }));
  return chain;
}

std::optional<std::vector<NilpotentMatrix>> find_in_weighted_sumset(const NilpotentMatrix& target,
                                                                    const std::vector<Rational>& weights,
                                                                    const std::vector<const LogSet*>& sets,
                                                                    const LabLimits& limits) {
  if (weights.size() != sets.size()) throw ContextMismatch("weights and sets differ in length");
  if (sets.empty()) {
    if (target.is_zero()) return std::vector<NilpotentMatrix>{};
    return std::nullopt;
  }
  // Enumerate all but the largest set; look the remainder up in the largest.
  std::size_t lookup = 0;
  for (std::size_t i = 1; i < sets.size(); ++i)
    if (sets[i]->size() > sets[lookup]->size()) lookup = i;
  std::vector<std::size_t> others;
  double combos = 1;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (i != lookup) {
      others.push_back(i);
      combos *= static_cast<double>(sets[i]->size());
      if (sets[i]->size() == 0) return std::nullopt;
    }
  if (combos > static_cast<double>(limits.max_search))
    throw SizeCapExceeded("weighted sumset search needs " + std::to_string(static_cast<long double>(combos)) +
                          " combinations");
  const Rational inv_lookup = Rational(1) / weights[lookup];
  std::vector<std::size_t> odometer(others.size(), 0);
  while (true) {
    NilpotentMatrix rest = target;
    for (std::size_t o = 0; o < others.size(); ++o)
      rest -= sets[others[o]]->elements()[odometer[o]] * weights[others[o]];
    const NilpotentMatrix needed = rest * inv_lookup;
    if (sets[lookup]->contains(needed)) {
      std::vector<NilpotentMatrix> terms(sets.size(), NilpotentMatrix::zero(target.dim()));
      for (std::size_t o = 0; o < others.size(); ++o) terms[others[o]] = sets[others[o]]->elements()[odometer[o]];
      terms[lookup] = needed;
      return terms;
    }
    std::size_t pos = 0;
    while (pos < odometer.size() && ++odometer[pos] == sets[others[pos]]->size()) odometer[pos++] = 0;
    if (pos == odometer.size()) return std::nullopt;
  }
}

CommutatorContainmentReport check_commutator_containment(const FiniteGroupSet& a, int level,
                                                         const ContainmentCertificate& cert, SearchMode mode,
                                                         std::size_t samples, std::uint64_t seed,
                                                         const LabLimits& limits) {
  if (cert.level != level) throw ContextMismatch("certificate level does not match");
  if (static_cast<int>(a.dim()) - 1 > cert.step)
    throw ContextMismatch("certificate step is below the ambient step of the group");
  const auto chain = compute_b_chain(a, std::max(cert.step, level), limits);
  const LogSet& targets_set = chain[static_cast<std::size_t>(level)];

  std::vector<LogSet> term_sets;
  for (const Integer& k : cert.exponents) {
    if (k > limits.max_elements) throw SizeCapExceeded("certificate exponent " + k.get_str() + " is beyond enumeration");
    term_sets.push_back(log_set(power_set(a, static_cast<int>(to_int64(k)), limits)));
  }
  std::vector<const LogSet*> term_ptrs;
  for (const auto& s : term_sets) term_ptrs.push_back(&s);

  std::vector<const NilpotentMatrix*> targets;
  for (const auto& t : targets_set.elements()) targets.push_back(&t);
  CommutatorContainmentReport report;
  report.level = level;
  report.chain_size = targets_set.size();
  report.mode = mode == SearchMode::kExhaustive ? "exhaustive" : "sampled";
  if (mode == SearchMode::kSampled && samples < targets.size()) {
    std::mt19937_64 rng(seed);
    std::shuffle(targets.begin(), targets.end(), rng);
    targets.resize(samples);
    std::sort(targets.begin(), targets.end(), [](auto* x, auto* y) { return MatrixLess{}(*x, *y); });
  }

  auto found = parallel_chunks(targets.size(), limits.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::optional<std::vector<NilpotentMatrix>>> out;
    for (std::size_t i = begin; i < end; ++i)
      out.push_back(find_in_weighted_sumset(*targets[i], cert.rationals, term_ptrs, limits));
    return out;
  });
  std::size_t i = 0;
  for (auto& chunk : found)
    for (auto& terms : chunk) {
      ++report.checked;
      if (!terms)
        ++report.failures;
      else if (report.witnesses.size() < 5)
        report.witnesses.push_back(Witness{*targets[i], std::move(*terms)});
      ++i;
    }
  return report;
}

}  // namespace nilgrp::lab
