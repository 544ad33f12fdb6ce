#include "qsprep/baseline.hpp"

#include <cmath>
#include <stdexcept>

#include "qsprep/gates.hpp"

namespace qsprep {

QuantumState build_U_state(const WeightVector& w, double gamma_bound,
                           QueryCounter& counter) {
  if (!(gamma_bound > 0.0) || gamma_bound < w.max_entry())
    throw std::invalid_argument(
        "build_U_state: gamma_bound must be positive and >= max weight");
  const std::size_t n = w.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> amps(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a0, a1] = rot_coeffs(w[i], gamma_bound);
    const double base = std::sqrt(inv_n);
    amps[2 * i] = base * a0;
    amps[2 * i + 1] = base * a1;
  }
  counter.add(2);  // query + uncompute query
  return QuantumState({{"out", n}, {"rot", 2}}, std::move(amps));
}

BaselineResult prepare_single_baseline(const WeightVector& w,
                                       double gamma_bound, Rng& rng,
                                       QueryCounter& counter) {
  AmplifyOutcome outcome = amplify_flag_zero(
      [&](QueryCounter& c) { return build_U_state(w, gamma_bound, c); },
      /*queries_per_iteration=*/4, rng, counter);
  return BaselineResult{std::move(outcome.state),
                        2 * outcome.attempts + 4 * outcome.iterations,
                        outcome.iterations};
}

std::pair<std::vector<QuantumState>, std::uint64_t> naive_k_copies(
    const WeightVector& w, std::size_t k, double gamma_bound, Rng& rng) {
  if (k == 0) throw std::invalid_argument("naive_k_copies: K must be >= 1");
  std::vector<QuantumState> states;
  states.reserve(k);
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < k; ++c) {
    QueryCounter counter;
    BaselineResult r = prepare_single_baseline(w, gamma_bound, rng, counter);
    total += counter.count;
    states.push_back(std::move(r.state));
  }
  return {std::move(states), total};
}

}  // namespace qsprep
