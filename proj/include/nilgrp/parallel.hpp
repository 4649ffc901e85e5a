#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace nilgrp {

// Splits [0, count) into contiguous chunks, runs fn(begin, end) on each in
// its own thread, and returns the results in chunk order. The output does not
// depend on the thread count as long as fn is order-preserving.
template <class Fn>
auto parallel_chunks(std::size_t count, int threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}, std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}, std::size_t{}));
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count));
  std::vector<Result> results(workers);
  if (workers == 1) {
    results[0] = fn(0, count);
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t begin = std::min(count, w * chunk);
        results[w] = fn(begin, std::min(count, begin + chunk));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace nilgrp
