#pragma once

#include <cstdint>

namespace qsprep {

/// Monotone tally of oracle-gate uses; the central measurable of every run.
struct QueryCounter {
  std::uint64_t count = 0;
  void add(std::uint64_t n = 1) { count += n; }
};

}  // namespace qsprep
