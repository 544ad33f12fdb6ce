#include "qsprep/topk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace qsprep {

namespace {

std::uint64_t ceil_log2(std::uint64_t n) {
  if (n <= 2) return 1;
  return std::bit_width(n - 1);
}

std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  return r == 0 ? 1 : r;
}

}  // namespace

std::optional<std::size_t> grover_search_above(const WeightVector& w,
                                               const SearchKey& threshold_key,
                                               Rng& rng, QueryCounter& counter,
                                               const IndexSet& exclude) {
  const std::size_t n = w.size();
  // The marked set is known exactly to the simulator; only the counter sees
  // the oracle cost the quantum search would have paid.
  std::vector<std::size_t> marked;
  for (std::size_t i = 0; i < n; ++i) {
    if (!exclude.members.empty() && exclude.contains(i)) continue;
    if (key_greater({w[i], i}, threshold_key)) marked.push_back(i);
  }

  const std::uint64_t cap = ceil_sqrt(n);
  const std::uint64_t give_up_after = ceil_log2(n);
  const double theta =
      marked.empty()
          ? 0.0
          : std::asin(std::sqrt(static_cast<double>(marked.size()) /
                                static_cast<double>(n)));

  std::uint64_t m = 1;
  std::uint64_t capped_failures = 0;
  for (;;) {
    const std::uint64_t j = rng.uniform_index(m);
    counter.add(2 + 2 * j);  // state build + phase/uncompute per iteration
    if (!marked.empty()) {
      const double angle = (2.0 * static_cast<double>(j) + 1.0) * theta;
      const double success = std::sin(angle) * std::sin(angle);
      if (rng.uniform01() < success)
        return marked[rng.uniform_index(marked.size())];
    }
    if (m >= cap && ++capped_failures >= give_up_after) return std::nullopt;
    m = std::min<std::uint64_t>(cap, (m * 6 + 4) / 5);
  }
}

TopKResult top_k_positions(const WeightVector& w, std::size_t k, double delta,
                           Rng& rng, QueryCounter& counter) {
  const std::size_t n = w.size();
  if (k == 0 || k > n)
    throw std::invalid_argument("top_k_positions: K must be in [1, N]");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("top_k_positions: delta must be in (0, 1)");

  if (k == n) {
    // The whole domain dominates itself; no quantum search is needed.
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    IndexSet h = IndexSet::of(n, std::move(all));
    const bool ok = is_valid_top_k(w, h);
    return TopKResult{std::move(h), 0, ok};
  }

  const auto repetitions = static_cast<std::size_t>(
      std::max(1.0, std::ceil(std::log2(1.0 / delta))));

  struct KeyRankLess {
    bool operator()(const SearchKey& a, const SearchKey& b) const {
      return key_greater(b, a);
    }
  };

  IndexSet best_h;
  double best_sum = -1.0;
  std::uint64_t total_queries = 0;

  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    QueryCounter rep_counter;

    // Random initial candidate set of K distinct indices, values read with
    // K queries.
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::set<SearchKey, KeyRankLess> candidates;
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t pick =
          c + static_cast<std::size_t>(rng.uniform_index(n - c));
      std::swap(pool[c], pool[pick]);
      rep_counter.add(1);
      candidates.emplace(w[pool[c]], pool[c]);
    }

    for (;;) {
      const SearchKey threshold = *candidates.begin();
      std::vector<std::size_t> members;
      members.reserve(k);
      for (const auto& [value, idx] : candidates) members.push_back(idx);
      const IndexSet exclude = IndexSet::of(n, std::move(members));
      const auto found =
          grover_search_above(w, threshold, rng, rep_counter, exclude);
      if (!found) break;
      rep_counter.add(1);  // read the found element's value
      candidates.erase(candidates.begin());
      candidates.emplace(w[*found], *found);
    }

    double sum = 0.0;
    std::vector<std::size_t> members;
    members.reserve(k);
    for (const auto& [value, idx] : candidates) {
      sum += value;
      members.push_back(idx);
    }
    total_queries += rep_counter.count;
    if (sum > best_sum) {
      best_sum = sum;
      best_h = IndexSet::of(n, std::move(members));
    }
  }

  counter.add(total_queries);
  const bool ok = is_valid_top_k(w, best_h);
  return TopKResult{std::move(best_h), total_queries, ok};
}

bool is_valid_top_k(const WeightVector& w, const IndexSet& H) {
  if (H.domain != w.size())
    throw std::invalid_argument("is_valid_top_k: domain mismatch");
  double min_in = std::numeric_limits<double>::infinity();
  for (std::size_t i : H.members) min_in = std::min(min_in, w[i]);
  const auto mask = H.mask();
  double max_out = 0.0;
  bool any_out = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!mask[i]) {
      max_out = std::max(max_out, w[i]);
      any_out = true;
    }
  }
  return !any_out || min_in >= max_out;
}

IndexSet classical_top_k(const WeightVector& w, std::size_t k) {
  const std::size_t n = w.size();
  if (k == 0 || k > n)
    throw std::invalid_argument("classical_top_k: K must be in [1, N]");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return key_greater({w[a], a}, {w[b], b});
                    });
  return IndexSet::of(n, {order.begin(), order.begin() + k});
}

}  // namespace qsprep
