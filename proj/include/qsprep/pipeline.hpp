#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qsprep/amplify.hpp"
#include "qsprep/angle_tree.hpp"
#include "qsprep/gates.hpp"
#include "qsprep/quantum_state.hpp"
#include "qsprep/query_counter.hpp"
#include "qsprep/rng.hpp"
#include "qsprep/topk.hpp"
#include "qsprep/weight_vector.hpp"

namespace qsprep {

/// Everything the two-query circuit C needs: the dominating set H, gamma
/// (the smallest weight inside H), the normalization Z = (N-K)*gamma +
/// sum of H weights, and the angle tree for the oracle-free stage D. p_w =
/// W/Z is recorded for diagnostics only.
struct PreparedCircuitC {
  IndexSet H;
  double gamma = 0.0;
  double Z = 0.0;
  double p_w = 0.0;
  AngleTree angle_tree;
  std::size_t K = 0;
  std::size_t N = 0;
  std::uint64_t preprocessing_queries = 0;

  // Implementation caches: the realized D|0...0> amplitudes and the H mask,
  // so one application of C costs a single pass over the state.
  std::vector<double> d_amplitudes;
  std::vector<std::uint8_t> h_mask;
};

struct PipelineStats {
  std::uint64_t preprocessing_queries = 0;
  std::vector<std::uint64_t> per_copy_queries;
  std::uint64_t total_queries = 0;
  std::vector<double> fidelities;
  std::uint64_t seed = 0;
  bool valid_H = false;  // diagnostic, from the classical test oracle
};

/// Classical construction of C from a given candidate set: reads the K
/// values (K queries on `counter` if provided), computes gamma and Z, builds
/// the angle tree.
PreparedCircuitC prepare_circuit(const WeightVector& w, const IndexSet& H,
                                 QueryCounter* counter = nullptr);

/// The preprocessing phase: top-K search (charged), K value queries, then
/// the classical construction of C. preprocessing_queries is exact.
PreparedCircuitC preprocess(const WeightVector& w, std::size_t k, double delta,
                            Rng& rng);

/// One application of C: returns the out (x) rot state
///   sqrt(p_w)|w>|0> + sqrt(1-p_w)|w_perp>|1>
/// obtained by rotating the off-H branches of the angle-tree state, and
/// charges exactly 2 queries. When gamma = 0 the off-H branches carry no
/// mass and the rotation is skipped.
QuantumState apply_C(const PreparedCircuitC& prep, const WeightVector& w,
                     QueryCounter& counter);

/// Full four-register simulation of C (rot, qry, out, ind), gate by gate,
/// including both oracle and both indicator gates and their uncomputation.
/// The qry register is modeled with basis labels drawn from {0} union
/// {w_i}. Restricted to N <= 16.
QuantumState reference_full_C(const PreparedCircuitC& prep,
                              const WeightVector& w);

/// Projects the reference state onto qry = 0, ind = 0 and returns the
/// out (x) rot reduction in apply_C's register order.
QuantumState reduce_full_C(const QuantumState& full);

/// Amplitude amplification on C with the unknown-amplitude schedule
/// (iteration cap ceil(sqrt(N/K)) unless overridden): returns a state with
/// fidelity 1 against |w> whenever H is a valid dominating set. Each
/// iteration charges 4 queries; each attempt's state build charges 2.
QuantumState amplify_to_w(const PreparedCircuitC& prep, const WeightVector& w,
                          Rng& rng, QueryCounter& counter,
                          AmplifyParams params = {});

/// The two-phase K-copy driver: one preprocessing run, then K amplified
/// copies. Per-phase query counts in the stats are exact.
std::pair<std::vector<QuantumState>, PipelineStats> prepare_k_copies(
    const WeightVector& w, std::size_t k, double delta, Rng& rng);

/// K i.i.d. samples with law w_i / W (conditioned on a valid H), obtained by
/// measuring each prepared copy. Indices are 0-based.
std::pair<std::vector<std::size_t>, PipelineStats> importance_sample(
    const WeightVector& w, std::size_t k, double delta, Rng& rng);

/// Coupon-collector demonstration of the K-search reduction: prepares and
/// measures `copies` copies of |w> for a 0/1 weight vector with at least 2K
/// ones, returning the distinct 1-positions observed.
std::vector<std::size_t> ksearch_reduction_demo(
    const std::vector<std::uint8_t>& bits, std::size_t k, std::size_t copies,
    Rng& rng, PipelineStats* stats_out = nullptr);

}  // namespace qsprep
