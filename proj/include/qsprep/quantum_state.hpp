#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsprep/rng.hpp"
#include "qsprep/weight_vector.hpp"

namespace qsprep {

struct Register {
  std::string name;
  std::size_t dim = 0;
};

/// A unit-norm state vector over a declared register layout. Amplitudes are
/// real (every state this simulator touches has non-negative real amplitudes
/// up to reflection signs); the flat index is row-major over the layout, so
/// the last register varies fastest.
class QuantumState {
 public:
  QuantumState(std::vector<Register> layout, std::vector<double> amplitudes);

  const std::vector<Register>& layout() const { return layout_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const double> amplitudes() const { return amplitudes_; }
  std::span<double> amplitudes() { return amplitudes_; }

  std::size_t register_index(const std::string& name) const;
  /// Stride of a register in the flat index (product of later dims).
  std::size_t register_stride(std::size_t reg) const;

  /// Marginal outcome probabilities of one register (compensated summation).
  std::vector<double> register_marginal(const std::string& name) const;

  bool same_layout(const QuantumState& other) const;

 private:
  std::vector<Register> layout_;
  std::vector<double> amplitudes_;
};

/// |w>: amplitude sqrt(w_i / W) on basis index i of an N-level register "out".
QuantumState state_from_weights(const WeightVector& w);

/// Born-rule measurement of one register. Returns the outcome and the
/// renormalized collapsed state (full layout preserved). Deterministic under
/// a fixed Rng seed.
std::pair<std::size_t, QuantumState> measure(const QuantumState& state,
                                             const std::string& reg, Rng& rng);

/// Collapses a register to a definite value without sampling (renormalizes).
QuantumState project_register(const QuantumState& state, const std::string& reg,
                              std::size_t value);

/// Removes a register that is in the definite basis state `value` (all
/// amplitude mass away from that value must be zero). Layout order of the
/// remaining registers is preserved.
QuantumState drop_register(const QuantumState& state, const std::string& reg,
                           std::size_t value);

/// Reorders registers into the given name order (same amplitudes, new flat
/// indexing). Intended for small reference states.
QuantumState permute_registers(const QuantumState& state,
                               const std::vector<std::string>& order);

/// |<a|b>|^2. Layouts must match exactly.
double fidelity(const QuantumState& a, const QuantumState& b);

/// (1/2) sum |p_i - q_i| for two probability vectors of equal length, each
/// summing to 1 within 1e-9.
double tv_distance(std::span<const double> p, std::span<const double> q);

}  // namespace qsprep
