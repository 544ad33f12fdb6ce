#include "qsprep/gates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsprep {

IndexSet IndexSet::of(std::size_t domain, std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!members.empty() && members.back() >= domain)
    throw std::invalid_argument("index set member outside domain");
  return IndexSet{domain, std::move(members)};
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(members.begin(), members.end(), i);
}

std::vector<std::uint8_t> IndexSet::mask() const {
  std::vector<std::uint8_t> m(domain, 0);
  for (std::size_t i : members) m[i] = 1;
  return m;
}

std::pair<double, double> rot_coeffs(double value, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("rot_coeffs: gamma must be positive");
  if (!std::isfinite(value) || value < 0.0)
    throw std::invalid_argument("rot_coeffs: value must be finite and >= 0");
  if (value > gamma) return {1.0, 0.0};
  const double r = value / gamma;  // <= 1 exactly for value <= gamma
  return {std::sqrt(r), std::sqrt(1.0 - r)};
}

int indicator(const IndexSet& H, std::size_t i) {
  if (i >= H.domain) throw std::out_of_range("indicator: index outside [N]");
  return H.contains(i) ? 0 : 1;
}

double oracle_query(const WeightVector& w, std::size_t i,
                    QueryCounter& counter) {
  if (i >= w.size()) throw std::out_of_range("oracle_query: index outside [N]");
  counter.add(1);
  return w[i];
}

}  // namespace qsprep
