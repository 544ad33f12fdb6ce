#pragma once

#include <cstdint>
#include <functional>

#include "qsprep/quantum_state.hpp"
#include "qsprep/query_counter.hpp"
#include "qsprep/rng.hpp"

namespace qsprep {

/// Schedule constants for amplitude amplification with unknown success
/// probability. Attempt t draws j uniform in [0, m_t) Grover iterations;
/// after a failure m grows by growth_num/growth_den (rounded up), clamped to
/// iteration_cap when the cap is nonzero.
struct AmplifyParams {
  std::uint64_t iteration_cap = 0;  // 0 = uncapped growth
  unsigned growth_num = 6;
  unsigned growth_den = 5;
  std::uint64_t max_attempts = 1'000'000;  // safety stop, unreachable for p > 0
};

struct AmplifyOutcome {
  QuantumState state;  // the flag-0 branch, rot register dropped
  std::uint64_t attempts = 0;
  std::uint64_t iterations = 0;
};

/// Amplifies the flag-0 component of the out (x) rot state produced by
/// `prepare`. Each attempt rebuilds the state (prepare charges its own
/// queries), applies j Grover iterations -- a sign flip on the flag-0
/// subspace followed by a reflection about the prepared state, charging
/// `queries_per_iteration` each -- and then measures the flag. On outcome 0
/// the collapsed out-register state is returned.
AmplifyOutcome amplify_flag_zero(
    const std::function<QuantumState(QueryCounter&)>& prepare,
    std::uint64_t queries_per_iteration, Rng& rng, QueryCounter& counter,
    const AmplifyParams& params = {});

std::uint64_t next_schedule_bound(std::uint64_t m, const AmplifyParams& params);

}  // namespace qsprep
