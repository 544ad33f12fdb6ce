#include "qsprep/angle_tree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qsprep {

double prefix_mass(const std::map<std::size_t, double>& h_values, double gamma,
                   double z, std::size_t i, std::size_t j) {
  if (i > j) throw std::invalid_argument("prefix_mass: empty interval (i > j)");
  if (!(z > 0.0)) throw std::invalid_argument("prefix_mass: Z must be positive");
  if (gamma < 0.0)
    throw std::invalid_argument("prefix_mass: gamma must be >= 0");
  double h_sum = 0.0;
  std::size_t h_count = 0;
  for (auto it = h_values.lower_bound(i);
       it != h_values.end() && it->first <= j; ++it) {
    h_sum += it->second;
    ++h_count;
  }
  const std::size_t len = j - i + 1;
  return (h_sum + gamma * static_cast<double>(len - h_count)) / z;
}

AngleTree build_D(const IndexSet& H,
                  const std::map<std::size_t, double>& h_values, double gamma,
                  double z, std::size_t n) {
  if (n == 0) throw std::invalid_argument("build_D: N must be positive");
  if (!(z > 0.0)) throw std::invalid_argument("build_D: Z must be positive");
  if (gamma < 0.0) throw std::invalid_argument("build_D: gamma must be >= 0");
  if (H.domain != n)
    throw std::invalid_argument("build_D: index set domain differs from N");
  for (std::size_t i : H.members)
    if (!h_values.contains(i))
      throw std::invalid_argument("build_D: missing value for an H index");

  const std::size_t depth = n <= 1 ? 0 : std::bit_width(n - 1);
  const std::size_t padded = std::size_t{1} << depth;

  std::vector<double> mass(padded, 0.0);
  const double off_mass = gamma / z;
  for (std::size_t i = 0; i < n; ++i) mass[i] = off_mass;
  for (std::size_t idx : H.members) mass[idx] = h_values.at(idx) / z;

  AngleTree tree;
  tree.leaf_count = padded;
  tree.source_size = n;
  tree.splits.resize(depth);

  const auto& members = H.members;
  bool has_uniform_region = false;
  std::uint64_t nontrivial = 0;

  std::vector<double> cur = std::move(mass);
  for (std::size_t level = depth; level-- > 0;) {
    const std::size_t nodes = std::size_t{1} << level;
    const std::size_t width = padded >> level;  // leaves under one node
    std::vector<double> parent(nodes);
    tree.splits[level].resize(nodes);
    for (std::size_t p = 0; p < nodes; ++p) {
      const double left = cur[2 * p];
      const double right = cur[2 * p + 1];
      const double total = left + right;
      parent[p] = total;
      tree.splits[level][p] = total > 0.0 ? left / total : 0.5;

      const std::size_t lo = p * width;
      const std::size_t hi = lo + width;  // exclusive
      const bool touches_h =
          std::lower_bound(members.begin(), members.end(), lo) !=
          std::lower_bound(members.begin(), members.end(), hi);
      const bool straddles_pad = lo < n && hi > n;
      if (total > 0.0) {
        if (touches_h || straddles_pad)
          ++nontrivial;
        else if (hi <= n)
          has_uniform_region = true;  // pure off-H node: shared 0.5 angle
      }
    }
    cur = std::move(parent);
  }
  tree.gate_count = nontrivial + (has_uniform_region ? 1 : 0);
  return tree;
}

QuantumState apply_angle_tree(const AngleTree& tree, std::size_t n_levels) {
  if (n_levels == 0 || n_levels > tree.leaf_count)
    throw std::invalid_argument("apply_angle_tree: bad target dimension");
  std::vector<double> cur{1.0};
  for (std::size_t level = 0; level < tree.depth(); ++level) {
    const auto& splits = tree.splits[level];
    std::vector<double> next(2 * splits.size());
    for (std::size_t p = 0; p < splits.size(); ++p) {
      const double left = cur[p] * splits[p];
      next[2 * p] = left;
      next[2 * p + 1] = cur[p] - left;  // exact complement: mass conserved
    }
    cur = std::move(next);
  }
  for (std::size_t i = n_levels; i < cur.size(); ++i)
    if (cur[i] != 0.0)
      throw std::invalid_argument(
          "apply_angle_tree: nonzero mass beyond the target dimension");
  std::vector<double> amps(n_levels);
  for (std::size_t i = 0; i < n_levels; ++i) amps[i] = std::sqrt(cur[i]);
  return QuantumState({{"out", n_levels}}, std::move(amps));
}

}  // namespace qsprep
