#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "nilgrp/identities.hpp"
#include "nilgrp/matrix.hpp"

namespace nilgrp::lab {

struct LabLimits {
  std::size_t max_elements = 2'000'000;  // per enumerated set
  std::size_t max_search = 50'000'000;   // combinations tried per containment query
  std::int64_t max_chain_power = 64;      // longest A, A^2, ... chain built for exhaustive membership
  int threads = 1;
};

// Finite set of unitriangular matrices, kept sorted in canonical order.
class FiniteGroupSet {
 public:
  FiniteGroupSet(std::size_t dim, std::vector<UnipotentMatrix> elements, std::string provenance);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<UnipotentMatrix>& elements() const { return elements_; }
  const std::string& provenance() const { return provenance_; }
  bool contains(const UnipotentMatrix& g) const { return index_.count(g) > 0; }
  bool is_symmetric() const;

 private:
  std::size_t dim_;
  std::vector<UnipotentMatrix> elements_;
  std::unordered_set<UnipotentMatrix, MatrixHash> index_;
  std::string provenance_;
};

// Finite set of strictly upper-triangular rational matrices.
class LogSet {
 public:
  LogSet(std::size_t dim, std::vector<NilpotentMatrix> elements);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<NilpotentMatrix>& elements() const { return elements_; }
  bool contains(const NilpotentMatrix& x) const { return index_.count(x) > 0; }

 private:
  std::size_t dim_;
  std::vector<NilpotentMatrix> elements_;
  std::unordered_set<NilpotentMatrix, MatrixHash> index_;
};

// Elementary generators E_{i,i+1}^{+-1} of UT(d, Z).
std::vector<UnipotentMatrix> standard_generators(std::size_t dim);

// Ball of the given radius in the word metric; always contains the identity.
// Generators must be closed under inverse.
FiniteGroupSet generate_ball(std::size_t dim, const std::vector<UnipotentMatrix>& generators, int radius,
                             const LabLimits& limits = {});

FiniteGroupSet product_set(const FiniteGroupSet& a, const FiniteGroupSet& b, const LabLimits& limits = {});
FiniteGroupSet power_set(const FiniteGroupSet& a, int k, const LabLimits& limits = {});
// A^1 .. A^k in order.
std::vector<FiniteGroupSet> power_chain(const FiniteGroupSet& a, std::int64_t k, const LabLimits& limits = {});
FiniteGroupSet inverse_set(const FiniteGroupSet& a);

LogSet log_set(const FiniteGroupSet& a);
LogSet sumset(const LogSet& s, const LogSet& t, const LabLimits& limits = {});
LogSet scale(const LogSet& s, const Rational& q);

struct CoverReport {
  std::size_t set_size = 0;      // |A|
  std::size_t product_size = 0;  // |AA|
  std::size_t translate_count = 0;
  std::vector<UnipotentMatrix> translates;
  bool valid = false;  // union of x_l A contains AA, checked exhaustively
};

// Greedy cover of AA by left translates x A with x drawn from AA A^-1.
// Ties go to the first candidate in canonical order.
CoverReport find_cover(const FiniteGroupSet& a, const LabLimits& limits = {});
bool cover_is_valid(const FiniteGroupSet& a, const std::vector<UnipotentMatrix>& translates,
                    const LabLimits& limits = {});

struct SumContainmentReport {
  std::int64_t scale = 1;       // m from the sum word
  std::int64_t word_length = 0;  // l
  std::int64_t power = 0;        // l * max(k1, k2)
  std::string mode;              // "exhaustive" or "constructive"
  std::size_t pairs_checked = 0;
  std::size_t failures = 0;
  std::int64_t max_witness_power = 0;  // largest minimal power observed
  bool passed() const { return failures == 0; }
};

// For every u in log A^k1, v in log A^k2 checks m (u + v) in log A^{l max(k1,k2)}.
// Exhaustive membership when A^{power} fits the limits; otherwise each member
// is witnessed by evaluating the sum word on e^u, e^v.
SumContainmentReport check_sum_containment(const FiniteGroupSet& a, int k1, int k2, int step,
                                           const LabLimits& limits = {});

// B_0 = log A, B_j = {[u, v] : u in B_0, v in B_{j-1}}, for j = 0..step.
std::vector<LogSet> compute_b_chain(const FiniteGroupSet& a, int step, const LabLimits& limits = {});

enum class SearchMode { kExhaustive, kSampled };

struct Witness {
  NilpotentMatrix target;
  std::vector<NilpotentMatrix> terms;  // w_i in log(A^{k_i}) with target = sum q_i w_i
};

struct CommutatorContainmentReport {
  int level = 0;
  std::size_t chain_size = 0;  // |B_j|
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string mode;
  std::vector<Witness> witnesses;  // first few
  bool passed() const { return failures == 0; }
};

CommutatorContainmentReport check_commutator_containment(const FiniteGroupSet& a, int level,
                                                         const ContainmentCertificate& cert, SearchMode mode,
                                                         std::size_t samples = 50, std::uint64_t seed = 0,
                                                         const LabLimits& limits = {});

// Exact membership of target in sum_i q_i S_i; returns the summands on success.
std::optional<std::vector<NilpotentMatrix>> find_in_weighted_sumset(const NilpotentMatrix& target,
                                                                    const std::vector<Rational>& weights,
                                                                    const std::vector<const LogSet*>& sets,
                                                                    const LabLimits& limits = {});

}  // namespace nilgrp::lab
