#include "qsprep/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "qsprep/kernels.hpp"

namespace qsprep {

PreparedCircuitC prepare_circuit(const WeightVector& w, const IndexSet& H,
                                 QueryCounter* counter) {
  const std::size_t n = w.size();
  if (H.domain != n || H.members.empty())
    throw std::invalid_argument("prepare_circuit: bad candidate set");
  const std::size_t k = H.size();

  QueryCounter local;
  QueryCounter& c = counter ? *counter : local;
  std::map<std::size_t, double> h_values;
  double gamma = std::numeric_limits<double>::infinity();
  double h_sum = 0.0;
  for (std::size_t i : H.members) {
    const double v = oracle_query(w, i, c);
    h_values[i] = v;
    h_sum += v;
    gamma = std::min(gamma, v);
  }
  const double z = static_cast<double>(n - k) * gamma + h_sum;

  PreparedCircuitC prep;
  prep.H = H;
  prep.gamma = gamma;
  prep.Z = z;
  prep.p_w = w.total() / z;  // diagnostic; W is not queried
  prep.K = k;
  prep.N = n;
  prep.angle_tree = build_D(H, h_values, gamma, z, n);
  QuantumState d_state = apply_angle_tree(prep.angle_tree, n);
  prep.d_amplitudes.assign(d_state.amplitudes().begin(),
                           d_state.amplitudes().end());
  prep.h_mask = H.mask();
  return prep;
}

PreparedCircuitC preprocess(const WeightVector& w, std::size_t k, double delta,
                            Rng& rng) {
  if (k == 0 || k > w.size())
    throw std::invalid_argument("preprocess: K must be in [1, N]");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("preprocess: delta must be in (0, 1)");
  QueryCounter counter;
  TopKResult top = top_k_positions(w, k, delta, rng, counter);
  PreparedCircuitC prep = prepare_circuit(w, top.H, &counter);
  prep.preprocessing_queries = counter.count;
  return prep;
}

QuantumState apply_C(const PreparedCircuitC& prep, const WeightVector& w,
                     QueryCounter& counter) {
  const std::size_t n = w.size();
  if (prep.N != n)
    throw std::invalid_argument("apply_C: circuit was prepared for another N");
  counter.add(2);  // the two oracle gates of C
  std::vector<double> amps(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = prep.d_amplitudes[i];
    if (prep.h_mask[i] || prep.gamma == 0.0) {
      amps[2 * i] = d;
      amps[2 * i + 1] = 0.0;
    } else {
      const auto [a0, a1] = rot_coeffs(w[i], prep.gamma);
      amps[2 * i] = d * a0;
      amps[2 * i + 1] = d * a1;
    }
  }
  return QuantumState({{"out", n}, {"rot", 2}}, std::move(amps));
}

namespace {

constexpr std::size_t kReferenceLimit = 16;

struct FullLayout {
  std::vector<double> values;  // sorted distinct qry labels, values[0] == 0
  std::size_t n = 0;
  std::size_t q = 0;

  std::size_t flat(std::size_t r, std::size_t qi, std::size_t i,
                   std::size_t b) const {
    return ((r * q + qi) * n + i) * 2 + b;
  }
  std::size_t value_index(double v) const {
    const auto it = std::lower_bound(values.begin(), values.end(), v);
    if (it == values.end() || *it != v)
      throw std::logic_error("qry label not in the modeled value set");
    return static_cast<std::size_t>(it - values.begin());
  }
};

}  // namespace

QuantumState reference_full_C(const PreparedCircuitC& prep,
                              const WeightVector& w) {
  const std::size_t n = w.size();
  if (prep.N != n)
    throw std::invalid_argument(
        "reference_full_C: circuit was prepared for another N");
  if (n > kReferenceLimit)
    throw std::invalid_argument(
        "reference_full_C: full-register model is limited to N <= 16");

  FullLayout fl;
  fl.values.assign(w.entries().begin(), w.entries().end());
  fl.values.push_back(0.0);
  std::sort(fl.values.begin(), fl.values.end());
  fl.values.erase(std::unique(fl.values.begin(), fl.values.end()),
                  fl.values.end());
  fl.n = n;
  fl.q = fl.values.size();

  std::vector<double> amps(2 * fl.q * n * 2, 0.0);

  // Stage D on out, acting on the all-zero input.
  for (std::size_t i = 0; i < n; ++i)
    amps[fl.flat(0, 0, i, 0)] = prep.d_amplitudes[i];

  const auto apply_indicator = [&] {
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t qi = 0; qi < fl.q; ++qi)
        for (std::size_t i = 0; i < n; ++i)
          if (!prep.h_mask[i])
            std::swap(amps[fl.flat(r, qi, i, 0)], amps[fl.flat(r, qi, i, 1)]);
  };
  const auto apply_oracle = [&] {
    // v -> v xor w_i: on the modeled label set this swaps 0 <-> w_i.
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t qi = fl.value_index(w[i]);
        if (qi == 0) continue;  // w_i == 0: the toggle is the identity
        for (std::size_t b = 0; b < 2; ++b)
          std::swap(amps[fl.flat(r, 0, i, b)], amps[fl.flat(r, qi, i, b)]);
      }
  };
  const auto apply_rotation = [&] {
    if (prep.gamma == 0.0) return;  // degenerate case: gate bypassed
    for (std::size_t qi = 0; qi < fl.q; ++qi) {
      const auto [a0, a1] = rot_coeffs(fl.values[qi], prep.gamma);
      for (std::size_t i = 0; i < n; ++i) {
        // Controlled on ind = 1; rotation acts on the rot register. The
        // |1> -> -a1|0> + a0|1> column is the unitary completion (only the
        // |0> column is pinned by the gate definition), and reduces to the
        // identity for values above the bound.
        const std::size_t i0 = fl.flat(0, qi, i, 1);
        const std::size_t i1 = fl.flat(1, qi, i, 1);
        const double r0 = amps[i0], r1 = amps[i1];
        amps[i0] = a0 * r0 - a1 * r1;
        amps[i1] = a1 * r0 + a0 * r1;
      }
    }
  };

  apply_indicator();
  apply_oracle();
  apply_rotation();
  apply_oracle();     // uncompute qry
  apply_indicator();  // uncompute ind

  return QuantumState(
      {{"rot", 2}, {"qry", fl.q}, {"out", n}, {"ind", 2}}, std::move(amps));
}

QuantumState reduce_full_C(const QuantumState& full) {
  QuantumState qry0 = project_register(full, "qry", 0);
  QuantumState ind0 = project_register(qry0, "ind", 0);
  QuantumState no_qry = drop_register(ind0, "qry", 0);
  QuantumState no_ind = drop_register(no_qry, "ind", 0);
  return permute_registers(no_ind, {"out", "rot"});
}

QuantumState amplify_to_w(const PreparedCircuitC& prep, const WeightVector& w,
                          Rng& rng, QueryCounter& counter,
                          AmplifyParams params) {
  if (params.iteration_cap == 0) {
    // p_w >= K/N for a valid H, so sqrt(N/K) iterations always suffice.
    params.iteration_cap = static_cast<std::uint64_t>(std::ceil(
        std::sqrt(static_cast<double>(prep.N) / static_cast<double>(prep.K))));
    if (params.iteration_cap == 0) params.iteration_cap = 1;
  }
  AmplifyOutcome outcome = amplify_flag_zero(
      [&](QueryCounter& c) { return apply_C(prep, w, c); },
      /*queries_per_iteration=*/4, rng, counter, params);
  return std::move(outcome.state);
}

std::pair<std::vector<QuantumState>, PipelineStats> prepare_k_copies(
    const WeightVector& w, std::size_t k, double delta, Rng& rng) {
  PipelineStats stats;
  stats.seed = rng.seed();
  PreparedCircuitC prep = preprocess(w, k, delta, rng);
  stats.preprocessing_queries = prep.preprocessing_queries;
  stats.valid_H = is_valid_top_k(w, prep.H);

  const QuantumState target = state_from_weights(w);
  std::vector<QuantumState> states;
  states.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    QueryCounter counter;
    QuantumState copy = amplify_to_w(prep, w, rng, counter);
    stats.per_copy_queries.push_back(counter.count);
    stats.fidelities.push_back(fidelity(copy, target));
    states.push_back(std::move(copy));
  }
  stats.total_queries = stats.preprocessing_queries;
  for (std::uint64_t q : stats.per_copy_queries) stats.total_queries += q;
  return {std::move(states), std::move(stats)};
}

std::pair<std::vector<std::size_t>, PipelineStats> importance_sample(
    const WeightVector& w, std::size_t k, double delta, Rng& rng) {
  auto [states, stats] = prepare_k_copies(w, k, delta, rng);
  std::vector<std::size_t> samples;
  samples.reserve(states.size());
  for (const QuantumState& s : states)
    samples.push_back(measure(s, "out", rng).first);
  return {std::move(samples), std::move(stats)};
}

std::vector<std::size_t> ksearch_reduction_demo(
    const std::vector<std::uint8_t>& bits, std::size_t k, std::size_t copies,
    Rng& rng, PipelineStats* stats_out) {
  std::size_t ones = 0;
  for (std::uint8_t b : bits) {
    if (b > 1) throw std::invalid_argument("reduction demo: bits must be 0/1");
    ones += b;
  }
  if (k == 0 || ones < 2 * k)
    throw std::invalid_argument(
        "reduction demo: need at least 2K ones in the bit vector");
  if (copies == 0) {
    if (stats_out) *stats_out = PipelineStats{};
    return {};
  }

  std::vector<double> entries(bits.begin(), bits.end());
  const WeightVector w(std::move(entries));
  constexpr double kDemoDelta = 0.05;

  PipelineStats stats;
  stats.seed = rng.seed();
  PreparedCircuitC prep = preprocess(w, k, kDemoDelta, rng);
  stats.preprocessing_queries = prep.preprocessing_queries;
  stats.valid_H = is_valid_top_k(w, prep.H);

  const QuantumState target = state_from_weights(w);
  std::vector<std::uint8_t> seen(bits.size(), 0);
  for (std::size_t c = 0; c < copies; ++c) {
    QueryCounter counter;
    QuantumState copy = amplify_to_w(prep, w, rng, counter);
    stats.per_copy_queries.push_back(counter.count);
    stats.fidelities.push_back(fidelity(copy, target));
    const std::size_t outcome = measure(copy, "out", rng).first;
    if (bits[outcome]) seen[outcome] = 1;
  }
  stats.total_queries = stats.preprocessing_queries;
  for (std::uint64_t q : stats.per_copy_queries) stats.total_queries += q;
  if (stats_out) *stats_out = std::move(stats);

  std::vector<std::size_t> found;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) found.push_back(i);
  return found;
}

}  // namespace qsprep
