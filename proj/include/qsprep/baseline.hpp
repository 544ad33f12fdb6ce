#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qsprep/amplify.hpp"
#include "qsprep/quantum_state.hpp"
#include "qsprep/query_counter.hpp"
#include "qsprep/rng.hpp"
#include "qsprep/weight_vector.hpp"

namespace qsprep {

struct BaselineResult {
  QuantumState state;            // N-level out register
  std::uint64_t queries_used = 0;
  std::uint64_t aa_iterations = 0;
};

/// One application of the single-copy circuit U: two queries, one controlled
/// rotation. Produces the out (x) rot state with amplitude
/// sqrt(w_i / (N * gamma_bound)) on |i>|0> and sqrt((1 - w_i/gamma_bound)/N)
/// on |i>|1>. Requires gamma_bound >= max_i w_i.
QuantumState build_U_state(const WeightVector& w, double gamma_bound,
                           QueryCounter& counter);

/// Amplifies the flag-0 branch of U to |w> with the shared unknown-amplitude
/// schedule (uncapped growth): expected O(sqrt(N * gamma_bound / W)) queries.
BaselineResult prepare_single_baseline(const WeightVector& w,
                                       double gamma_bound, Rng& rng,
                                       QueryCounter& counter);

/// The naive K-copy baseline: K independent single-copy preparations.
std::pair<std::vector<QuantumState>, std::uint64_t> naive_k_copies(
    const WeightVector& w, std::size_t k, double gamma_bound, Rng& rng);

}  // namespace qsprep
