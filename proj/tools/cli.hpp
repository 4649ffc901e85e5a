#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nilgrp::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // a verification ran and found a counterexample
  kUsage = 2,
  kSizeCap = 3,
  kInvariant = 4,
};

// args excludes the program name. JSON errors are written to err.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nilgrp::cli
