#pragma once

// Reproducible randomness: mt19937_64 (bit stream fixed by the standard)
// with splitmix64-derived substream seeds, one substream per simulation
// run. Bounded draws use rejection so results do not depend on the
// platform's distribution implementations.

#include <cstdint>
#include <random>

namespace dop {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n-1}, exact (rejection sampling).
  long uniform_index(long n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t reject_above = 0 - (0 - un) % un;  // largest multiple of un
    for (;;) {
      const std::uint64_t r = eng_();
      if (reject_above == 0 || r < reject_above) {
        return static_cast<long>(r % un);
      }
    }
  }

  // The index-th output of splitmix64 seeded at base; used as the seed of
  // the index-th substream.
  static std::uint64_t substream_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace dop
