#include "qsprep/amplify.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qsprep/kernels.hpp"

namespace qsprep {

std::uint64_t next_schedule_bound(std::uint64_t m,
                                  const AmplifyParams& params) {
  std::uint64_t grown =
      (m * params.growth_num + params.growth_den - 1) / params.growth_den;
  if (grown <= m) grown = m + 1;
  if (params.iteration_cap > 0 && grown > params.iteration_cap)
    grown = params.iteration_cap;
  return grown;
}

AmplifyOutcome amplify_flag_zero(
    const std::function<QuantumState(QueryCounter&)>& prepare,
    std::uint64_t queries_per_iteration, Rng& rng, QueryCounter& counter,
    const AmplifyParams& params) {
  std::uint64_t m = 1;
  std::uint64_t attempts = 0, iterations = 0;
  while (attempts < params.max_attempts) {
    ++attempts;
    QuantumState psi0 = prepare(counter);
    if (psi0.layout().size() != 2 || psi0.layout()[1].name != "rot" ||
        psi0.layout()[1].dim != 2)
      throw std::invalid_argument(
          "amplify_flag_zero: expected an out (x) rot state");
    const std::uint64_t j = rng.uniform_index(m);
    QuantumState state = psi0;
    for (std::uint64_t it = 0; it < j; ++it) {
      kern::negate_stride2(state.amplitudes(), 0);
      kern::reflect_about(psi0.amplitudes(), state.amplitudes());
    }
    iterations += j;
    counter.add(j * queries_per_iteration);
    const double p0 = kern::sum_squares_stride2(state.amplitudes(), 0);
    if (rng.uniform01() < p0) {
      QuantumState collapsed = project_register(state, "rot", 0);
      QuantumState out = drop_register(collapsed, "rot", 0);
      // Reflections can leave the captured branch with a global minus sign;
      // normalize it away (amplitudes here are non-negative by construction).
      double s = 0.0;
      for (double a : out.amplitudes())
        if (std::abs(a) > std::abs(s)) s = a;
      if (s < 0.0) kern::scale(out.amplitudes(), -1.0);
      return {std::move(out), attempts, iterations};
    }
    m = next_schedule_bound(m, params);
  }
  throw std::runtime_error("amplitude amplification did not converge");
}

}  // namespace qsprep
