#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "qsprep/gates.hpp"
#include "qsprep/quantum_state.hpp"

namespace qsprep {

/// Binary-split representation of the oracle-free preparation circuit: node
/// (level, p) holds the fraction of its probability mass routed to the left
/// child. Level 0 is the root; leaves live at level depth(). The tree is
/// padded to the next power of two; padded leaves carry zero mass.
struct AngleTree {
  std::size_t leaf_count = 0;   // padded, power of two
  std::size_t source_size = 0;  // N before padding
  std::vector<std::vector<double>> splits;  // splits[level][node]
  std::uint64_t gate_count = 0;  // distinct conditional-rotation angles

  std::size_t depth() const { return splits.size(); }
};

/// Squared-amplitude mass of the target state on the inclusive index
/// interval [i, j] (0-based):
///   (sum of w_l over H-members in [i, j] + gamma * |[i, j] \ H|) / Z.
double prefix_mass(const std::map<std::size_t, double>& h_values, double gamma,
                   double z, std::size_t i, std::size_t j);

/// Builds the angle tree realizing amplitude sqrt(w_i / Z) on H members and
/// sqrt(gamma / Z) elsewhere. gate_count tallies the splits whose angle is
/// data-dependent (interval touches H or the padding boundary) plus one
/// shared angle for the uniform off-H regions, and stays O(K log N).
AngleTree build_D(const IndexSet& H,
                  const std::map<std::size_t, double>& h_values, double gamma,
                  double z, std::size_t n);

/// Runs the binary-split recursion and returns the realized state on an
/// n_levels-dimensional "out" register. Mass beyond n_levels must be zero.
QuantumState apply_angle_tree(const AngleTree& tree, std::size_t n_levels);

}  // namespace qsprep
