#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library beyond its value types.

#include <cstdint>
#include <string>
#include <vector>

#include "nilgrp/linear_algebra.hpp"
#include "nilgrp/rational.hpp"

namespace oracle {

inline int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Witt formula: (1/d) sum_{e | d} mu(e) L^{d/e}.
inline std::int64_t witt_dimension(int num_generators, int degree) {
  std::int64_t total = 0;
  for (int e = 1; e <= degree; ++e)
    if (degree % e == 0) total += mobius(e) * ipow(num_generators, degree / e);
  return total / degree;
}

// Counts words strictly smaller than every proper rotation.
inline std::int64_t brute_force_lyndon_count(int num_generators, int degree) {
  std::int64_t count = 0;
  std::vector<int> w(static_cast<std::size_t>(degree), 0);
  const std::int64_t total = ipow(num_generators, degree);
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    for (int i = degree - 1; i >= 0; --i) {
      w[static_cast<std::size_t>(i)] = static_cast<int>(c % num_generators);
      c /= num_generators;
    }
    bool lyndon = true;
    for (int r = 1; r < degree && lyndon; ++r) {
      std::vector<int> rot(w.begin() + r, w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + r);
      if (!(w < rot)) lyndon = false;
    }
    count += lyndon ? 1 : 0;
  }
  return count;
}

inline nilgrp::RationalMatrix series_exp(const nilgrp::RationalMatrix& n) {
  const std::size_t d = n.rows();
  nilgrp::RationalMatrix term = nilgrp::RationalMatrix::identity(d);
  nilgrp::RationalMatrix sum = term;
  for (std::size_t k = 1; k < d; ++k) {
    term = term * n;
    term *= nilgrp::Rational(1, static_cast<std::int64_t>(k));
    sum += term;
  }
  return sum;
}

inline nilgrp::RationalMatrix series_log(const nilgrp::RationalMatrix& u) {
  const std::size_t d = u.rows();
  const nilgrp::RationalMatrix m = u - nilgrp::RationalMatrix::identity(d);
  nilgrp::RationalMatrix power = m;
  nilgrp::RationalMatrix sum(d, d);
  for (std::size_t k = 1; k < d; ++k) {
    sum += power * nilgrp::Rational(k % 2 ? 1 : -1, static_cast<std::int64_t>(k));
    power = power * m;
  }
  return sum;
}

}  // namespace oracle
