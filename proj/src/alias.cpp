#include "qsprep/alias.hpp"

#include <cmath>
#include <stdexcept>

namespace qsprep {

AliasTable alias_build(const WeightVector& w) {
  const std::size_t n = w.size();
  AliasTable table;
  table.keep_prob.assign(n, 1.0);
  table.alias.resize(n);
  for (std::size_t i = 0; i < n; ++i) table.alias[i] = i;

  const double scale = static_cast<double>(n) / w.total();
  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = w[i] * scale;
    ++table.build_cost;
    if (scaled[i] < 1.0)
      small.push_back(i);
    else
      large.push_back(i);  // ties at exactly 1 go to the large list
  }

  std::size_t small_head = 0, large_head = 0;
  while (small_head < small.size() && large_head < large.size()) {
    const std::size_t g = large[large_head++];
    double residual = scaled[g];
    while (residual > 1.0 && small_head < small.size()) {
      const std::size_t s = small[small_head++];
      table.keep_prob[s] = scaled[s];
      table.alias[s] = g;
      residual -= 1.0 - scaled[s];
      ++table.build_cost;
    }
    if (residual < 0.0) residual = 0.0;  // shed rounding dust
    ++table.build_cost;
    if (residual < 1.0) {
      scaled[g] = residual;
      small.push_back(g);
    } else {
      table.keep_prob[g] = 1.0;  // residual == 1 (or smalls exhausted)
    }
  }
  // Leftovers in either list carry full columns.
  for (; large_head < large.size(); ++large_head, ++table.build_cost)
    table.keep_prob[large[large_head]] = 1.0;
  for (; small_head < small.size(); ++small_head, ++table.build_cost)
    table.keep_prob[small[small_head]] = 1.0;
  return table;
}

std::size_t alias_sample(const AliasTable& table, Rng& rng) {
  if (table.size() == 0) throw std::invalid_argument("alias_sample: empty table");
  const std::size_t col =
      static_cast<std::size_t>(rng.uniform_index(table.size()));
  return rng.uniform01() < table.keep_prob[col] ? col : table.alias[col];
}

double empirical_tv(std::span<const std::size_t> samples,
                    const WeightVector& w) {
  if (samples.empty())
    throw std::invalid_argument("empirical_tv: no samples given");
  std::vector<double> counts(w.size(), 0.0);
  for (std::size_t s : samples) {
    if (s >= w.size())
      throw std::invalid_argument("empirical_tv: sample index outside [N]");
    counts[s] += 1.0;
  }
  const double inv_m = 1.0 / static_cast<double>(samples.size());
  const double inv_w = 1.0 / w.total();
  double tv = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    tv += std::abs(counts[i] * inv_m - w[i] * inv_w);
  return 0.5 * tv;
}

}  // namespace qsprep
