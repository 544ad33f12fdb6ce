#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qsprep/rng.hpp"
#include "qsprep/weight_vector.hpp"

namespace qsprep {

/// Walker/Vose alias table: column i keeps its own index with probability
/// keep_prob[i] and defers to alias[i] otherwise. build_cost counts worklist
/// operations so the linear preprocessing claim is measurable.
struct AliasTable {
  std::vector<double> keep_prob;
  std::vector<std::size_t> alias;
  std::uint64_t build_cost = 0;

  std::size_t size() const { return keep_prob.size(); }
};

/// Two-worklist construction. Small columns are consumed in index order; a
/// large column stays active while its residual exceeds 1, and residuals of
/// exactly 1 finalize (ties go to the large list).
AliasTable alias_build(const WeightVector& w);

/// Returns i with probability w_i / W in O(1) operations.
std::size_t alias_sample(const AliasTable& table, Rng& rng);

/// TV distance between the empirical distribution of `samples` (0-based
/// indices into w) and the normalized weights.
double empirical_tv(std::span<const std::size_t> samples,
                    const WeightVector& w);

}  // namespace qsprep
