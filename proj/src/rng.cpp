#include "qsprep/rng.hpp"

#include <bit>
#include <stdexcept>

namespace qsprep {

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  if (n == 1) return 0;
  const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
  for (;;) {
    const std::uint64_t v = engine_() & mask;
    if (v < n) return v;
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) {
  std::uint64_t state = seed;
  std::uint64_t h = splitmix64(state);
  state ^= a;
  h ^= splitmix64(state);
  state ^= b;
  h ^= splitmix64(state);
  state ^= c;
  h ^= splitmix64(state);
  return h;
}

}  // namespace qsprep
