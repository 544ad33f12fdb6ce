#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "qsprep/gates.hpp"
#include "qsprep/query_counter.hpp"
#include "qsprep/rng.hpp"
#include "qsprep/weight_vector.hpp"

namespace qsprep {

struct TopKResult {
  IndexSet H;
  std::uint64_t queries_used = 0;
  bool succeeded = false;  // diagnostic, set with full classical access
};

/// Keys are (value, index) pairs compared lexicographically, which makes the
/// marked-set predicate a strict total order even under ties.
using SearchKey = std::pair<double, std::size_t>;

/// Strict total order on keys: larger value ranks higher; ties go to the
/// smaller index.
inline bool key_greater(const SearchKey& a, const SearchKey& b) {
  if (a.first != b.first) return a.first > b.first;
  return a.second < b.second;
}

/// Simulated exponential Grover search for an element whose key is strictly
/// lex-greater than threshold_key, skipping indices in `exclude` (the current
/// candidate set of the top-K procedure; empty by default). Returns a
/// uniformly random marked index, or nullopt once ceil(log2 N) consecutive
/// attempts at the iteration cap ceil(sqrt(N)) have failed. Charges 2 queries
/// per Grover iteration plus 2 per attempt's state build.
std::optional<std::size_t> grover_search_above(const WeightVector& w,
                                               const SearchKey& threshold_key,
                                               Rng& rng, QueryCounter& counter,
                                               const IndexSet& exclude = {});

/// Iterative threshold-raising top-K search: keeps the K best keys seen,
/// repeatedly searches above the K-th key and replaces it, until the search
/// certifies there is nothing left. Amplified to confidence delta by
/// ceil(log2(1/delta)) independent repetitions, keeping the candidate set
/// with the largest weight sum.
TopKResult top_k_positions(const WeightVector& w, std::size_t k, double delta,
                           Rng& rng, QueryCounter& counter);

/// Classical test oracle: true iff min over H >= max outside H. Uses full
/// access to w; never charged to a quantum counter.
bool is_valid_top_k(const WeightVector& w, const IndexSet& H);

/// The K lex-largest keys, computed classically. Used by tests and by the
/// preprocessing cross-checks that need an exact dominating set.
IndexSet classical_top_k(const WeightVector& w, std::size_t k);

}  // namespace qsprep
