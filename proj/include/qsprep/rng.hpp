#pragma once

#include <cstdint>
#include <random>

namespace qsprep {

/// Deterministic PRNG wrapper. All randomness in the simulator flows through
/// this class so that a fixed seed reproduces every measurement outcome and
/// schedule draw bit-for-bit, independent of platform or thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). Unbiased (masked rejection); n = 1 consumes
  /// no engine output.
  std::uint64_t uniform_index(std::uint64_t n);

  std::uint64_t next_raw() { return engine_(); }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// splitmix64-style mixing used to derive independent child seeds from
/// (seed, a, b, c) tuples, e.g. hash(seed, N, K, trial) for experiment trials.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a = 0,
                       std::uint64_t b = 0, std::uint64_t c = 0);

}  // namespace qsprep
