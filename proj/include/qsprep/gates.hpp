#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qsprep/query_counter.hpp"
#include "qsprep/weight_vector.hpp"

namespace qsprep {

/// A subset of the index domain [0, N). Members are kept sorted and unique.
struct IndexSet {
  std::size_t domain = 0;
  std::vector<std::size_t> members;

  static IndexSet of(std::size_t domain, std::vector<std::size_t> members);

  bool contains(std::size_t i) const;
  std::size_t size() const { return members.size(); }

  /// Dense 0/1 membership mask of length `domain`, for O(1) lookups in
  /// amplitude kernels.
  std::vector<std::uint8_t> mask() const;
};

/// Coefficients of the controlled rotation gate: on a flag in state |b> with
/// a value register holding v, the flag becomes a0|b> + a1|1-b>, with
///   (a0, a1) = (sqrt(v/gamma), sqrt(1 - v/gamma))   for 0 <= v <= gamma,
///   (a0, a1) = (1, 0)                               for v > gamma.
/// The formula branch covers v = 0 (full flip to |1-b>); only values above
/// the bound leave the flag untouched. a0^2 + a1^2 = 1 always.
std::pair<double, double> rot_coeffs(double value, double gamma);

/// Indicator gate semantics: 1 iff i is outside H. Throws on i >= H.domain.
int indicator(const IndexSet& H, std::size_t i);

/// The oracle gate: returns w[i] and charges exactly one query.
double oracle_query(const WeightVector& w, std::size_t i,
                    QueryCounter& counter);

}  // namespace qsprep
